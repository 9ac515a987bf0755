//! Command-line front end.
//!
//! Settings are layered: built-in defaults, then a flat `key = value` config
//! file (`--config`), then command-line flags. Config keys are the flag names
//! without the leading dashes; `-` and `_` are interchangeable.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::channel::{draw_csi, parse_csi};
use crate::error::{Error, Result};
use crate::harness::{
    is_log_spaced, lin_space, log_space, run_paired_trials, sweep_crb, sweep_gamma, sweep_noise, DopplerUnit, LinkMode,
    Metric, ModeSeries, PointStats, Scenario, SweepResult,
};
use crate::output::{emit_csv, emit_plot, format_value};
use crate::phaseopt::{certify_optimum, MAX_CERTIFY_ELEMENTS};
use crate::rng::derive_seed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

const DEFAULT_OUT: &str = "results";
const DEFAULT_PANELS: usize = 120;
const DEFAULT_GRID: usize = 720;

#[derive(Debug, Parser)]
#[command(
    name = "irs-radar",
    version,
    about = "Monte-Carlo experiments for IRS-aided radar estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean NMSE of every link mode versus the LoS-to-NLoS SNR
    SweepGamma(Flags),
    /// Mean NMSE of every link mode versus the noise variance
    SweepNoise(Flags),
    /// Mean CRB trace of every link mode versus the LoS-to-NLoS SNR
    Crb(Flags),
    /// LoS and one NLoS phase policy at a single operating point
    Single(Flags),
    /// Exhaustive grid check of the closed-form IRS phases on random panels
    Certify(Flags),
}

#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    /// Slow-time samples per coherent interval
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of IRS panels (NLoS paths)
    #[arg(long)]
    pub k: Option<usize>,
    /// Elements per IRS panel
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// LoS-to-NLoS SNR
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Noise variance
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub axis_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub axis_max: Option<f64>,
    #[arg(long)]
    pub axis_points: Option<usize>,
    #[arg(long, value_parser = ["log", "linear"])]
    pub axis_scale: Option<String>,
    /// Phase policy of the `single` subcommand; `fixed` uses all-zero phases
    #[arg(long, value_parser = ["optimal", "random", "fixed"])]
    pub policy: Option<String>,
    #[arg(long, value_parser = ["magnitude_squared", "complex"])]
    pub nlos_form: Option<String>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot
    #[arg(long)]
    pub plot: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Replayed IRS channels, one `re,im` line per coefficient
    #[arg(long)]
    pub csi: Option<PathBuf>,
    /// Unit of the drawn Doppler shifts
    #[arg(long, value_parser = ["cycles", "radians"])]
    pub doppler_unit: Option<String>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Use one waveform for every trial
    #[arg(long)]
    pub freeze_waveform: bool,
    /// Panels checked by `certify`
    #[arg(long)]
    pub panels: Option<usize>,
    /// Phase grid points per element for `certify`
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    SweepGamma,
    SweepNoise,
    Crb,
    Single,
    Certify,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::SweepGamma => "sweep-gamma",
            Task::SweepNoise => "sweep-noise",
            Task::Crb => "crb",
            Task::Single => "single",
            Task::Certify => "certify",
        }
    }

    fn stem(self) -> &'static str {
        match self {
            Task::SweepGamma => "sweep_gamma",
            Task::SweepNoise => "sweep_noise",
            Task::Crb => "crb",
            Task::Single => "single",
            Task::Certify => "certify",
        }
    }

    fn is_sweep(self) -> bool {
        matches!(self, Task::SweepGamma | Task::SweepNoise | Task::Crb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.log {
            log_space(self.min, self.max, self.points)
        } else {
            lin_space(self.min, self.max, self.points)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    Optimal,
    Random,
    Fixed,
}

impl Policy {
    fn mode(self) -> LinkMode {
        match self {
            Policy::Optimal => LinkMode::NlosOptimal,
            Policy::Random => LinkMode::NlosRandom,
            Policy::Fixed => LinkMode::NlosFixed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub task: Task,
    pub scenario: Scenario,
    /// Swept axis; `None` for `single` and `certify`.
    pub axis: Option<AxisSpec>,
    pub policy: Policy,
    pub out_dir: PathBuf,
    pub plot: bool,
    pub threads: Option<usize>,
    pub panels: usize,
    pub grid: usize,
    /// Panel sizes `certify` cycles through.
    pub certify_elements: Vec<usize>,
}

const KEYS: [&str; 21] = [
    "n",
    "k",
    "m",
    "trials",
    "seed",
    "gamma",
    "sigma2",
    "axis_min",
    "axis_max",
    "axis_points",
    "axis_scale",
    "policy",
    "nlos_form",
    "out",
    "plot",
    "csi",
    "doppler_unit",
    "threads",
    "freeze_waveform",
    "panels",
    "grid",
];

fn usage(msg: String) -> Error {
    Error::Parse(msg)
}

/// Parses flat `key = value` text; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected `key = value`", i + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        let value = value.trim().trim_matches('"').to_string();
        if map.insert(key.clone(), value).is_some() {
            return Err(usage(format!("config line {}: key `{key}` given twice", i + 1)));
        }
    }
    Ok(map)
}

fn flag_values(f: &Flags) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    };
    put("n", f.n.map(|v| v.to_string()));
    put("k", f.k.map(|v| v.to_string()));
    put("m", f.m.map(|v| v.to_string()));
    put("trials", f.trials.map(|v| v.to_string()));
    put("seed", f.seed.map(|v| v.to_string()));
    put("gamma", f.gamma.map(|v| format!("{v:e}")));
    put("sigma2", f.sigma2.map(|v| format!("{v:e}")));
    put("axis_min", f.axis_min.map(|v| format!("{v:e}")));
    put("axis_max", f.axis_max.map(|v| format!("{v:e}")));
    put("axis_points", f.axis_points.map(|v| v.to_string()));
    put("axis_scale", f.axis_scale.clone());
    put("policy", f.policy.clone());
    put("nlos_form", f.nlos_form.clone());
    put("out", f.out.as_ref().map(|p| p.to_string_lossy().into_owned()));
    put("plot", f.plot.then(|| "true".to_string()));
    put("csi", f.csi.as_ref().map(|p| p.to_string_lossy().into_owned()));
    put("doppler_unit", f.doppler_unit.clone());
    put("threads", f.threads.map(|v| v.to_string()));
    put("freeze_waveform", f.freeze_waveform.then(|| "true".to_string()));
    put("panels", f.panels.map(|v| v.to_string()));
    put("grid", f.grid.map(|v| v.to_string()));
    map
}

/// Keys the task does not accept on the command line.
fn conflicting_keys(task: Task) -> &'static [&'static str] {
    const AXIS: [&str; 4] = ["axis_min", "axis_max", "axis_points", "axis_scale"];
    match task {
        Task::SweepGamma | Task::Crb => &["gamma", "policy", "panels", "grid"],
        Task::SweepNoise => &["sigma2", "policy", "panels", "grid"],
        Task::Single => &["axis_min", "axis_max", "axis_points", "axis_scale", "panels", "grid"],
        Task::Certify => &AXIS,
    }
}

struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn get<V: std::str::FromStr>(&self, key: &str) -> Result<Option<V>> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| usage(format!("invalid value for `{key}`: `{s}`"))),
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.raw(key) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(s) => Err(usage(format!(
                "invalid value for `{key}`: `{s}` (expected true or false)"
            ))),
        }
    }
}

fn split(command: &Command) -> (Task, &Flags) {
    match command {
        Command::SweepGamma(f) => (Task::SweepGamma, f),
        Command::SweepNoise(f) => (Task::SweepNoise, f),
        Command::Crb(f) => (Task::Crb, f),
        Command::Single(f) => (Task::Single, f),
        Command::Certify(f) => (Task::Certify, f),
    }
}

/// Resolves defaults, the config file and flags into a validated run.
pub fn parse_config(cli: &Cli) -> Result<RunConfig> {
    let (task, flags) = split(&cli.command);
    let from_flags = flag_values(flags);
    for key in conflicting_keys(task) {
        if from_flags.contains_key(*key) {
            return Err(usage(format!(
                "conflict: --{} cannot be used with {}",
                key.replace('_', "-"),
                task.name()
            )));
        }
    }
    let mut values = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let mut file = parse_config_text(&text)?;
            for key in conflicting_keys(task) {
                file.remove(*key);
            }
            file
        }
        None => BTreeMap::new(),
    };
    values.extend(from_flags);
    let s = Settings { values };

    let mut scenario = Scenario::default();
    if let Some(v) = s.get("n")? {
        scenario.n = v;
    }
    if let Some(v) = s.get("k")? {
        scenario.k = v;
    }
    if let Some(v) = s.get("m")? {
        scenario.m = v;
    }
    if let Some(v) = s.get("trials")? {
        scenario.trials = v;
    }
    if let Some(v) = s.get("seed")? {
        scenario.master_seed = v;
    }
    if let Some(v) = s.get("gamma")? {
        scenario.gamma = v;
    }
    if let Some(v) = s.get("sigma2")? {
        scenario.sigma2 = v;
    }
    if let Some(v) = s.raw("nlos_form") {
        scenario.nlos_form = v.parse().map_err(|e: Error| usage(format!("nlos_form: {e}")))?;
    }
    if let Some(v) = s.raw("doppler_unit") {
        scenario.doppler_unit = v
            .parse::<DopplerUnit>()
            .map_err(|e| usage(format!("doppler_unit: {e}")))?;
    }
    scenario.freeze_waveform = s.flag("freeze_waveform")?;

    for (key, value) in [
        ("n", scenario.n),
        ("k", scenario.k),
        ("m", scenario.m),
        ("trials", scenario.trials),
    ] {
        if value == 0 {
            return Err(usage(format!("`{key}` must be positive")));
        }
    }
    if !(scenario.gamma > 0.0 && scenario.gamma.is_finite()) {
        return Err(usage(format!(
            "`gamma` must be finite and positive (got {})",
            scenario.gamma
        )));
    }
    if !(scenario.sigma2 > 0.0 && scenario.sigma2.is_finite()) {
        return Err(usage(format!(
            "`sigma2` must be finite and positive (got {})",
            scenario.sigma2
        )));
    }

    let policy = match s.raw("policy") {
        None | Some("optimal") => Policy::Optimal,
        Some("random") => Policy::Random,
        Some("fixed") => Policy::Fixed,
        Some(v) => return Err(usage(format!("invalid value for `policy`: `{v}`"))),
    };
    if task == Task::Single {
        scenario.link_mode = policy.mode();
        if policy == Policy::Fixed {
            scenario.fixed_theta = Some(vec![vec![0.0; scenario.m]; scenario.k]);
        }
    }

    let axis = if task.is_sweep() {
        let (min, max, points) = match task {
            Task::SweepNoise => (1e-5, 1.0, 11),
            _ => (1e-5, 1e5, 21),
        };
        let log = match s.raw("axis_scale") {
            None | Some("log") => true,
            Some("linear") => false,
            Some(v) => return Err(usage(format!("invalid value for `axis_scale`: `{v}`"))),
        };
        let spec = AxisSpec {
            min: s.get("axis_min")?.unwrap_or(min),
            max: s.get("axis_max")?.unwrap_or(max),
            points: s.get("axis_points")?.unwrap_or(points),
            log,
        };
        if !(spec.min.is_finite() && spec.max.is_finite() && spec.min < spec.max) {
            return Err(usage(format!(
                "`axis_min` must be below `axis_max` (got {} and {})",
                spec.min, spec.max
            )));
        }
        if spec.points < 2 {
            return Err(usage(format!("`axis_points` must be at least 2 (got {})", spec.points)));
        }
        if spec.min <= 0.0 {
            return Err(usage(format!("`axis_min` must be positive (got {})", spec.min)));
        }
        Some(spec)
    } else {
        None
    };

    if let Some(path) = s.raw("csi") {
        let path = PathBuf::from(path);
        let text = fs::read_to_string(&path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        scenario.csi = Some(parse_csi(&text, scenario.k, scenario.m).map_err(|e| usage(format!("csi: {e}")))?);
    }

    let threads = s.get("threads")?;
    if threads == Some(0) {
        return Err(usage("`threads` must be positive".into()));
    }
    let panels = s.get("panels")?.unwrap_or(DEFAULT_PANELS);
    if panels == 0 {
        return Err(usage("`panels` must be positive".into()));
    }
    let grid = s.get("grid")?.unwrap_or(DEFAULT_GRID);
    if grid < 2 {
        return Err(usage(format!("`grid` must be at least 2 (got {grid})")));
    }
    let certify_elements = if s.raw("m").is_some() {
        if scenario.m > MAX_CERTIFY_ELEMENTS && task == Task::Certify {
            return Err(usage(format!(
                "`m` must be at most {MAX_CERTIFY_ELEMENTS} for certify (got {})",
                scenario.m
            )));
        }
        vec![scenario.m]
    } else {
        vec![1, 2, 3]
    };

    if task != Task::Certify {
        scenario.validate().map_err(|e| usage(e.to_string()))?;
    }

    Ok(RunConfig {
        task,
        scenario,
        axis,
        policy,
        out_dir: s
            .raw("out")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        plot: s.flag("plot")?,
        threads,
        panels,
        grid,
        certify_elements,
    })
}

/// LoS plus the policy's NLoS mode at the scenario's operating point.
pub fn run_single(scenario: &Scenario) -> SweepResult {
    let modes = [LinkMode::LosOnly, scenario.link_mode];
    let trials = run_paired_trials(scenario, &modes);
    let mut series: Vec<ModeSeries> = modes
        .iter()
        .map(|&mode| ModeSeries {
            mode,
            points: vec![PointStats::from_records(
                trials
                    .iter()
                    .map(|t| &t.records.iter().find(|(m, _)| *m == mode).expect("mode evaluated").1),
            )],
        })
        .collect();
    series.sort_by_key(|s| s.mode.as_str());
    SweepResult {
        axis_name: "gamma".into(),
        axis_values: vec![scenario.gamma],
        log_axis: false,
        metric: Metric::Nmse,
        series,
        trials_requested: scenario.trials,
    }
}

const CERTIFY_HEADER: &str = "panel,elements,grid_points,grid_max,closed_form,l1_norm,gap,bound,within_bound\n";

/// Runs `certify` and returns the CSV table and the number of panels
/// outside the quantization bound.
pub fn run_certify(config: &RunConfig) -> Result<(String, usize)> {
    let seed = config.scenario.master_seed;
    let rows: Vec<Result<(String, bool)>> = (0..config.panels)
        .into_par_iter()
        .map(|i| {
            let m = config.certify_elements[i % config.certify_elements.len()];
            let raw = draw_csi::<f64>(m, 1, derive_seed(seed, &[i as u64]))?;
            let c = certify_optimum(&raw.panels[0], config.grid)?;
            let ok = c.within_bound();
            let line = format!(
                "{i},{},{},{},{},{},{},{},{ok}\n",
                c.elements,
                c.grid_points,
                format_value(c.grid_max),
                format_value(c.closed_form),
                format_value(c.l1_norm),
                format_value(c.gap),
                format_value(c.bound),
            );
            Ok((line, ok))
        })
        .collect();
    let mut text = String::from(CERTIFY_HEADER);
    let mut failed = 0;
    for r in rows {
        let (line, ok) = r?;
        text.push_str(&line);
        failed += usize::from(!ok);
    }
    Ok((text, failed))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the configured task and returns the files written.
pub fn execute(config: &RunConfig) -> Result<Vec<PathBuf>> {
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Capability(format!("cannot start {t} worker threads: {e}")))?
            .install(|| execute_here(config)),
        None => execute_here(config),
    }
}

fn execute_here(config: &RunConfig) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&config.out_dir).map_err(|source| Error::Io {
        path: config.out_dir.clone(),
        source,
    })?;
    let stem = config.task.stem();
    let csv_path = config.out_dir.join(format!("{stem}.csv"));
    let result = match config.task {
        Task::Certify => {
            let (text, failed) = run_certify(config)?;
            write(&csv_path, &text)?;
            if failed > 0 {
                return Err(Error::CertificationFailed {
                    failed,
                    total: config.panels,
                });
            }
            return Ok(vec![csv_path]);
        }
        Task::Single => run_single(&config.scenario),
        sweep => {
            let values = config.axis.as_ref().expect("sweeps have an axis").values();
            let mut result = match sweep {
                Task::SweepGamma => sweep_gamma(&config.scenario, &values)?,
                Task::SweepNoise => sweep_noise(&config.scenario, &values)?,
                _ => sweep_crb(&config.scenario, &values)?,
            };
            result.log_axis = config.axis.as_ref().is_some_and(|a| a.log) && is_log_spaced(&values);
            result
        }
    };
    emit_csv(&result, &csv_path)?;
    let mut written = vec![csv_path];
    if config.plot {
        let svg = config.out_dir.join(format!("{stem}.svg"));
        emit_plot(&result, &svg)?;
        written.push(svg);
    }
    Ok(written)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_IO,
        e if e.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args`, runs the task and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = parse_config(&cli).and_then(|config| execute(&config));
    match outcome {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("irs-radar").chain(args.iter().copied()))
            .map_err(|e| Error::Parse(e.to_string()))?;
        parse_config(&cli)
    }

    #[test]
    fn sweep_gamma_defaults() {
        let c = config(&["sweep-gamma"]).unwrap();
        let s = &c.scenario;
        assert_eq!((s.n, s.k, s.m, s.trials), (50, 5, 10, 1000));
        let axis = c.axis.unwrap();
        let v = axis.values();
        assert_eq!(v.len(), 21);
        assert_eq!(v[0], 1e-5);
        assert_eq!(v[20], 1e5);
        assert!(is_log_spaced(&v));
        assert_eq!(c.out_dir, PathBuf::from("results"));
    }

    #[test]
    fn sweep_noise_defaults() {
        let c = config(&["sweep-noise"]).unwrap();
        let axis = c.axis.unwrap();
        assert_eq!((axis.min, axis.max), (1e-5, 1.0));
        assert_eq!(c.scenario.gamma, 1e-2);
    }

    #[test]
    fn zero_trials_is_usage_error() {
        let e = config(&["sweep-gamma", "--trials", "0"]).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_USAGE);
        assert!(e.to_string().contains("trials"));
    }

    #[test]
    fn conflicts() {
        for args in [
            &["sweep-gamma", "--policy", "random"][..],
            &["sweep-gamma", "--gamma", "1"],
            &["crb", "--gamma", "1"],
            &["sweep-noise", "--sigma2", "1"],
            &["single", "--axis-points", "3"],
        ] {
            let e = config(args).unwrap_err().to_string();
            assert!(e.contains("conflict"), "{args:?}: {e}");
        }
    }

    #[test]
    fn axis_validation() {
        assert!(config(&["sweep-gamma", "--axis-min", "10", "--axis-max", "1"]).is_err());
        assert!(config(&["sweep-gamma", "--axis-points", "1"]).is_err());
        let e = config(&["sweep-gamma", "--axis-min", "-1"]).unwrap_err().to_string();
        assert!(e.contains("axis_min"), "{e}");
    }

    #[test]
    fn config_text() {
        let map = parse_config_text("# header\nn = 20\naxis-points=5 # trailing\n\n").unwrap();
        assert_eq!(map["n"], "20");
        assert_eq!(map["axis_points"], "5");
        let e = parse_config_text("bogus = 1").unwrap_err().to_string();
        assert!(e.contains("bogus"));
        assert!(parse_config_text("n 20").is_err());
        assert!(parse_config_text("n = 1\nn = 2").is_err());
    }

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "n = 20\nk = 3\ntrials = 9\ngamma = 5\n").unwrap();
        let p = path.to_str().unwrap();
        let c = config(&["sweep-gamma", "--config", p, "--k", "4"]).unwrap();
        assert_eq!((c.scenario.n, c.scenario.k, c.scenario.trials), (20, 4, 9));
        let c = config(&["single", "--config", p, "--gamma", "0.5"]).unwrap();
        assert_eq!(c.scenario.gamma, 0.5);
        let c = config(&["single", "--config", p]).unwrap();
        assert_eq!(c.scenario.gamma, 5.0);
    }

    #[test]
    fn invalid_value_names_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "sigma2 = lots\n").unwrap();
        let e = config(&["single", "--config", path.to_str().unwrap()])
            .unwrap_err()
            .to_string();
        assert!(e.contains("sigma2"), "{e}");
    }

    #[test]
    fn missing_config_is_io() {
        let e = config(&["single", "--config", "/nonexistent/run.conf"]).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_IO);
    }

    #[test]
    fn single_policy() {
        let c = config(&["single", "--policy", "fixed", "--k", "2", "--m", "3"]).unwrap();
        assert_eq!(c.scenario.link_mode, LinkMode::NlosFixed);
        assert_eq!(c.scenario.fixed_theta, Some(vec![vec![0.0; 3]; 2]));
        let c = config(&["single"]).unwrap();
        assert_eq!(c.scenario.link_mode, LinkMode::NlosOptimal);
    }

    #[test]
    fn certify_element_sizes() {
        assert_eq!(config(&["certify"]).unwrap().certify_elements, vec![1, 2, 3]);
        assert_eq!(config(&["certify", "--m", "2"]).unwrap().certify_elements, vec![2]);
        assert!(config(&["certify", "--m", "5"]).is_err());
    }

    #[test]
    fn underdetermined_is_usage() {
        let e = config(&["single", "--n", "3", "--k", "4"]).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_USAGE);
    }
}
