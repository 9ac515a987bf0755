use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irs-radar"))
        .args(args)
        .output()
        .unwrap()
}

fn run_in(out: &Path, args: &[&str]) -> Output {
    let mut all = args.to_vec();
    all.extend(["--out", out.to_str().unwrap()]);
    run(&all)
}

#[test]
fn same_seed_twice_gives_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "sweep-gamma",
        "--seed",
        "7",
        "--trials",
        "30",
        "--axis-points",
        "5",
        "--plot",
    ];
    assert_eq!(run_in(a.path(), &args).status.code(), Some(0));
    assert_eq!(run_in(b.path(), &args).status.code(), Some(0));
    for f in ["sweep_gamma.csv", "sweep_gamma.svg"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let other = tempfile::tempdir().unwrap();
    run_in(
        other.path(),
        &["sweep-gamma", "--seed", "8", "--trials", "30", "--axis-points", "5"],
    );
    assert_ne!(
        fs::read(a.path().join("sweep_gamma.csv")).unwrap(),
        fs::read(other.path().join("sweep_gamma.csv")).unwrap()
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["sweep-noise", "--trials", "40", "--axis-points", "4", "--plot"];
    let mut one = args.to_vec();
    one.extend(["--threads", "1"]);
    let mut four = args.to_vec();
    four.extend(["--threads", "4"]);
    assert_eq!(run_in(a.path(), &one).status.code(), Some(0));
    assert_eq!(run_in(b.path(), &four).status.code(), Some(0));
    for f in ["sweep_noise.csv", "sweep_noise.svg"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["sweep-gamma", "--trials", "0"][..],
        &["sweep-gamma", "--policy", "random"],
        &["sweep-gamma", "--axis-min", "5", "--axis-max", "1"],
        &["sweep-gamma", "--axis-scale", "log", "--axis-min", "0"],
        &["single", "--nlos-form", "squared"],
        &["bogus"],
        &[],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn config_file_and_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "# small run\ntrials = 12\nn = 20\nk = 2\nm = 3\n").unwrap();
    let out = run_in(
        dir.path(),
        &["single", "--config", conf.to_str().unwrap(), "--trials", "7"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("single.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].ends_with(",7") && lines[1].contains("los_only"));
    assert!(lines[2].contains("nlos_optimal"));

    fs::write(&conf, "trails = 12\n").unwrap();
    let out = run_in(dir.path(), &["single", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trails"));
}

#[test]
fn io_failures_exit_with_four() {
    let out = run(&["single", "--trials", "3", "--config", "/nonexistent/run.conf"]);
    assert_eq!(out.status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = run(&[
        "single",
        "--trials",
        "3",
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn certify_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["certify", "--panels", "6", "--grid", "90"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("certify.csv")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    let elements: Vec<&str> = rows.iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(elements, ["1", "2", "3", "1", "2", "3"]);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn csi_replay() {
    let dir = tempfile::tempdir().unwrap();
    let raw = irs_radar::channel::draw_csi::<f64>(2, 2, 9).unwrap();
    let csi = dir.path().join("panels.csi");
    fs::write(&csi, irs_radar::channel::format_csi(&raw.panels)).unwrap();
    let args = [
        "single",
        "--k",
        "2",
        "--m",
        "2",
        "--n",
        "16",
        "--trials",
        "5",
        "--csi",
        csi.to_str().unwrap(),
    ];
    assert_eq!(run_in(dir.path(), &args).status.code(), Some(0));
    let bad = [
        "single",
        "--k",
        "3",
        "--m",
        "2",
        "--n",
        "16",
        "--trials",
        "5",
        "--csi",
        csi.to_str().unwrap(),
    ];
    assert_eq!(run_in(dir.path(), &bad).status.code(), Some(2));
}

#[test]
fn single_with_plot_advises_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["single", "--trials", "3", "--plot"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CSV"));
    assert!(dir.path().join("single.csv").exists());
}
