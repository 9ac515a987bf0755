//! CSV tables and SVG plots for sweep results.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::{LinkMode, Metric, SweepResult};

pub const CSV_HEADER: [&str; 6] = ["axis", "mode", "mean_nmse", "stderr_nmse", "mean_crb_trace", "trials"];

/// One data row of a sweep table.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub axis: f64,
    pub mode: String,
    pub mean_nmse: f64,
    pub stderr_nmse: f64,
    pub mean_crb_trace: f64,
    pub trials: usize,
}

/// Ten significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.9e}")
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Rows of `result`, sorted by axis value then mode name.
pub fn csv_rows(result: &SweepResult) -> Vec<CsvRow> {
    let mut order: Vec<usize> = (0..result.axis_values.len()).collect();
    order.sort_by(|&a, &b| result.axis_values[a].total_cmp(&result.axis_values[b]));
    let mut series: Vec<_> = result.series.iter().collect();
    series.sort_by_key(|s| s.mode.as_str());
    let mut rows = Vec::with_capacity(order.len() * series.len());
    for i in order {
        for s in &series {
            let p = &s.points[i];
            rows.push(CsvRow {
                axis: result.axis_values[i],
                mode: s.mode.as_str().to_string(),
                mean_nmse: p.mean_nmse,
                stderr_nmse: p.stderr_nmse,
                mean_crb_trace: p.mean_crb_trace,
                trials: p.trials_used,
            });
        }
    }
    rows
}

/// Serializes rows to CSV text.
pub fn write_csv_string(rows: &[CsvRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(CSV_HEADER).map_err(err)?;
    for r in rows {
        w.write_record([
            format_value(r.axis),
            r.mode.clone(),
            format_value(r.mean_nmse),
            format_value(r.stderr_nmse),
            format_value(r.mean_crb_trace),
            r.trials.to_string(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn emit_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = write_csv_string(&csv_rows(result))?;
    fs::write(path, text).map_err(|e| io_error(path, e))
}

/// Parses CSV text produced by [`write_csv_string`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!(
            "unexpected CSV header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |i: usize| -> Result<f64> {
            rec[i].parse().map_err(|_| {
                Error::Parse(format!(
                    "row {}: column {} is not a number: `{}`",
                    line + 1,
                    CSV_HEADER[i],
                    &rec[i]
                ))
            })
        };
        rows.push(CsvRow {
            axis: field(0)?,
            mode: rec[1].to_string(),
            mean_nmse: field(2)?,
            stderr_nmse: field(3)?,
            mean_crb_trace: field(4)?,
            trials: rec[5]
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: trials is not a count: `{}`", line + 1, &rec[5])))?,
        });
    }
    Ok(rows)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<CsvRow>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_csv(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

fn color(mode: LinkMode) -> &'static str {
    match mode {
        LinkMode::LosOnly => "#1f77b4",
        LinkMode::NlosFixed => "#7f7f7f",
        LinkMode::NlosOptimal => "#d62728",
        LinkMode::NlosRandom => "#2ca02c",
    }
}

struct Scale {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Scale {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Option<Self> {
        let t = |v: f64| if log { v.log10() } else { v };
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            lo = lo.min(t(v));
            hi = hi.max(t(v));
        }
        if !lo.is_finite() {
            return None;
        }
        if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
            let pad = if log { 1.0 } else { lo.abs().max(1.0) * 0.5 };
            lo -= pad;
            hi += pad;
        }
        Some(Self { lo, hi, log })
    }

    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.ceil() as i32, self.hi.floor() as i32);
            let step = ((b - a) / 8 + 1).max(1);
            (a..=b).step_by(step as usize).map(|e| 10f64.powi(e)).collect()
        } else {
            (0..=4)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / 4.0)
                .collect()
        }
    }
}

fn tick_label(v: f64, log: bool) -> String {
    if log {
        format!("1e{}", v.log10().round() as i32)
    } else {
        format!("{v:.3e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn metric_column(metric: Metric) -> &'static str {
    match metric {
        Metric::Nmse => "mean_nmse",
        Metric::CrbTrace => "mean_crb_trace",
    }
}

/// Renders `result` as a standalone SVG document.
pub fn render_plot(result: &SweepResult) -> Result<String> {
    if result.series.is_empty() || result.axis_values.is_empty() {
        return Err(Error::Contract("nothing to plot: the sweep is empty".into()));
    }
    if result.axis_values.len() < 2 {
        return Err(Error::Contract(
            "a single-point axis cannot be plotted; use the CSV output instead".into(),
        ));
    }
    let value = |p: &crate::harness::PointStats| match result.metric {
        Metric::Nmse => p.mean_nmse,
        Metric::CrbTrace => p.mean_crb_trace,
    };
    let all: Vec<f64> = result.series.iter().flat_map(|s| s.points.iter().map(value)).collect();
    let finite: Vec<f64> = all.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Err(Error::UndefinedMetric("every plotted value is non-finite"));
    }
    let y_log = finite.iter().all(|&v| v > 0.0);
    let xs = Scale::new(result.axis_values.iter().copied(), result.log_axis).ok_or(Error::NonFinite("axis values"))?;
    let ys = Scale::new(finite.iter().copied(), y_log).expect("finite values exist");

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |v: f64| LEFT + xs.unit(v) * pw;
    let py = |v: f64| TOP + (1.0 - ys.unit(v)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );

    for t in xs.ticks() {
        let x = px(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
            TOP + ph
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + ph + 16.0,
            tick_label(t, xs.log)
        );
    }
    for t in ys.ticks() {
        let y = py(t);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            LEFT + pw
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            tick_label(t, ys.log)
        );
    }

    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0,
        escape(&result.axis_name)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        metric_column(result.metric)
    );

    for (i, series) in result.series.iter().enumerate() {
        let points: Vec<String> = result
            .axis_values
            .iter()
            .zip(&series.points)
            .map(|(&x, p)| (x, value(p)))
            .filter(|&(x, y)| x.is_finite() && y.is_finite() && (!xs.log || x > 0.0) && (!ys.log || y > 0.0))
            .map(|(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let c = color(series.mode);
        let _ = writeln!(
            s,
            r#"<polyline class="series" data-mode="{}" fill="none" stroke="{c}" stroke-width="2" points="{}"/>"#,
            series.mode.as_str(),
            points.join(" ")
        );
        let ly = TOP + 20.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<g class="legend-entry"><line x1="{lx}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{c}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text></g>"#,
            lx + 25.0,
            lx + 32.0,
            ly + 4.0,
            escape(series.mode.label())
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_plot(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let svg = render_plot(result)?;
    fs::write(path, svg).map_err(|e| io_error(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{ModeSeries, PointStats};

    fn point(v: f64) -> PointStats {
        PointStats {
            mean_nmse: v,
            stderr_nmse: v / 10.0,
            mean_crb_trace: 2.0 * v,
            stderr_crb_trace: 0.0,
            trials_used: 7,
            failures: 0,
        }
    }

    fn result(axis: Vec<f64>, f: impl Fn(usize, usize) -> f64) -> SweepResult {
        let mut series: Vec<ModeSeries> = LinkMode::SWEPT
            .iter()
            .enumerate()
            .map(|(m, &mode)| ModeSeries {
                mode,
                points: (0..axis.len()).map(|i| point(f(m, i))).collect(),
            })
            .collect();
        series.sort_by_key(|s| s.mode.as_str());
        SweepResult {
            axis_name: "gamma".into(),
            log_axis: crate::harness::is_log_spaced(&axis),
            axis_values: axis,
            metric: Metric::Nmse,
            series,
            trials_requested: 7,
        }
    }

    #[test]
    fn row_count_and_order() {
        let r = result(vec![10.0, 0.1, 1.0], |m, i| (m + i + 1) as f64);
        let rows = csv_rows(&r);
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].axis, 0.1);
        let modes: Vec<&str> = rows[..3].iter().map(|r| r.mode.as_str()).collect();
        assert_eq!(modes, ["los_only", "nlos_optimal", "nlos_random"]);
        assert!(rows.windows(2).all(|w| w[0].axis <= w[1].axis));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_value(1e-5), "1.000000000e-5");
        assert_eq!(format_value(0.123456789012), "1.234567890e-1");
    }

    #[test]
    fn string_round_trip() {
        let r = result(vec![1e-3, 1.0, 1e3], |m, i| 0.3 * (m as f64 + 1.0) / (i as f64 + 0.7));
        let rows = csv_rows(&r);
        let back = parse_csv(&write_csv_string(&rows).unwrap()).unwrap();
        assert_eq!(back.len(), rows.len());
        for (a, b) in rows.iter().zip(&back) {
            assert_eq!(a.mode, b.mode);
            assert_eq!(a.trials, b.trials);
            assert!(((a.mean_nmse - b.mean_nmse) / a.mean_nmse).abs() < 5e-10);
        }
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn plot_single_point_axis_fails() {
        let r = result(vec![1.0], |_, _| 1.0);
        let e = render_plot(&r).unwrap_err().to_string();
        assert!(e.contains("CSV"));
    }

    #[test]
    fn plot_flat_values() {
        let r = result(vec![1.0, 10.0, 100.0], |_, _| 0.5);
        let svg = render_plot(&r).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn plot_with_non_positive_values_uses_linear_y() {
        let r = result(vec![1.0, 2.0, 3.0], |m, i| m as f64 - i as f64);
        let svg = render_plot(&r).unwrap();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
