//! Seeded Monte-Carlo trials and parameter sweeps over the three link
//! scenarios: direct LoS only, NLoS through randomly phased panels, and NLoS
//! through optimally phased panels.
//!
//! Every random quantity of trial `t` comes from its own stream,
//! `derive_seed(master_seed, [t, stream, attempt])`. The axis position is not
//! part of the key, so all axis points and all link modes see the same
//! waveform, Doppler, channel and noise draws (common random numbers).
//! Results are therefore identical for any worker count.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::bounds::crb;
use crate::channel::{
    draw_around_panels, draw_csi, normalize_scenario, path_coefficients, ChannelRealization, IrsPanel, NlosForm,
    RawChannels,
};
use crate::error::{Error, Result};
use crate::estimator::{blue_estimate, NoiseModel};
use crate::model::{build_sensing_matrix, make_random_waveform, Waveform};
use crate::phaseopt::{apply_policy, PhasePolicy};
use crate::rng;

/// Bound on redraws of a degenerate channel realization.
pub const MAX_RESAMPLE_ATTEMPTS: usize = 100;

const STREAM_WAVEFORM: u64 = 1;
const STREAM_DOPPLER: u64 = 2;
const STREAM_CHANNEL: u64 = 3;
const STREAM_PHASE: u64 = 4;
const STREAM_NOISE: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkMode {
    LosOnly,
    NlosFixed,
    NlosOptimal,
    NlosRandom,
}

impl LinkMode {
    /// The modes every sweep evaluates, in CSV order.
    pub const SWEPT: [LinkMode; 3] = [LinkMode::LosOnly, LinkMode::NlosOptimal, LinkMode::NlosRandom];

    pub fn as_str(self) -> &'static str {
        match self {
            LinkMode::LosOnly => "los_only",
            LinkMode::NlosFixed => "nlos_fixed",
            LinkMode::NlosOptimal => "nlos_optimal",
            LinkMode::NlosRandom => "nlos_random",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LinkMode::LosOnly => "LoS",
            LinkMode::NlosFixed => "NLoS-fixed",
            LinkMode::NlosOptimal => "NLoS-optimal",
            LinkMode::NlosRandom => "NLoS-random",
        }
    }
}

impl fmt::Display for LinkMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LinkMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "los_only" => Ok(LinkMode::LosOnly),
            "nlos_fixed" => Ok(LinkMode::NlosFixed),
            "nlos_optimal" => Ok(LinkMode::NlosOptimal),
            "nlos_random" => Ok(LinkMode::NlosRandom),
            other => Err(Error::Parse(format!("unknown link mode `{other}`"))),
        }
    }
}

/// Unit of the Doppler draws. Steering vectors always take radians per
/// pulse; cycles are converted with `nu = 2π f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DopplerUnit {
    #[default]
    CyclesPerPulse,
    RadiansPerPulse,
}

impl DopplerUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            DopplerUnit::CyclesPerPulse => "cycles",
            DopplerUnit::RadiansPerPulse => "radians",
        }
    }

    fn to_radians(self, v: f64) -> f64 {
        match self {
            DopplerUnit::CyclesPerPulse => std::f64::consts::TAU * v,
            DopplerUnit::RadiansPerPulse => v,
        }
    }
}

impl FromStr for DopplerUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycles" => Ok(DopplerUnit::CyclesPerPulse),
            "radians" => Ok(DopplerUnit::RadiansPerPulse),
            other => Err(Error::Parse(format!(
                "unknown Doppler unit `{other}` (expected cycles or radians)"
            ))),
        }
    }
}

/// Full description of one experiment point.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// LoS-to-NLoS SNR `|α_T h_LoS|² / |αᵀ h_NLoS|²`.
    pub gamma: f64,
    /// White noise variance; `R = sigma2 · I`.
    pub sigma2: f64,
    pub link_mode: LinkMode,
    /// Phases for [`LinkMode::NlosFixed`], one vector of length `m` per panel.
    pub fixed_theta: Option<Vec<Vec<f64>>>,
    /// Doppler draws are uniform on `[lo, hi)`.
    pub doppler_range: (f64, f64),
    pub doppler_unit: DopplerUnit,
    pub trials: usize,
    pub master_seed: u64,
    pub nlos_form: NlosForm,
    /// Reuse one waveform for every trial instead of redrawing it.
    pub freeze_waveform: bool,
    /// Replayed panels; when set, `g` and `h` are not drawn.
    pub csi: Option<Vec<IrsPanel<f64>>>,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            n: 50,
            k: 5,
            m: 10,
            gamma: 1e-2,
            sigma2: 1e-2,
            link_mode: LinkMode::NlosOptimal,
            fixed_theta: None,
            doppler_range: (-0.5, 0.5),
            doppler_unit: DopplerUnit::CyclesPerPulse,
            trials: 1000,
            master_seed: 1,
            nlos_form: NlosForm::Complex,
            freeze_waveform: false,
            csi: None,
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Contract(msg));
        if self.n == 0 || self.k == 0 || self.m == 0 {
            return bad(format!(
                "N, K, M must be positive (got {}, {}, {})",
                self.n, self.k, self.m
            ));
        }
        if self.k > self.n {
            return Err(Error::Underdetermined {
                paths: self.k,
                samples: self.n,
            });
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be finite and nonnegative (got {})", self.gamma));
        }
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return bad(format!("sigma2 must be finite and positive (got {})", self.sigma2));
        }
        let (lo, hi) = self.doppler_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return bad(format!("Doppler range [{lo}, {hi}) is empty or non-finite"));
        }
        if let Some(panels) = &self.csi {
            if panels.len() != self.k || panels.iter().any(|p| p.elements() != self.m) {
                return bad("replayed CSI does not match K panels of M elements".into());
            }
        }
        if self.link_mode == LinkMode::NlosFixed {
            match &self.fixed_theta {
                Some(t) if t.len() == self.k && t.iter().all(|v| v.len() == self.m) => {}
                Some(_) => return bad("fixed phases must be K vectors of length M".into()),
                None => return bad("fixed policy requires fixed phases".into()),
            }
        }
        Ok(())
    }

    pub fn with_mode(&self, link_mode: LinkMode) -> Self {
        Self {
            link_mode,
            ..self.clone()
        }
    }

    fn seed(&self, trial: usize, stream: u64, attempt: usize) -> u64 {
        rng::derive_seed(self.master_seed, &[trial as u64, stream, attempt as u64])
    }
}

/// Per-trial metrics for one link mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub nmse: f64,
    /// `Tr(C_α̂)`.
    pub mse: f64,
    /// `Tr(C_CRB)`.
    pub crb_trace: f64,
}

/// Everything random in one trial, shared by all link modes.
#[derive(Debug, Clone)]
pub struct TrialDraws {
    pub waveform: Waveform<f64>,
    /// Radians per pulse; `[0]` is the LoS path, `[1..]` the NLoS paths.
    pub dopplers: Vec<f64>,
    /// Normalized against the random-phase reference configuration.
    pub realization: ChannelRealization<f64>,
    /// Path coefficients under random phases (already normalized).
    pub random_coefficients: Vec<Complex64>,
    /// `CN(0, I)` noise, colored per scenario at evaluation time.
    pub white_noise: Vec<Complex64>,
    /// Channel redraws needed to avoid a degenerate realization.
    pub resamples: usize,
}

/// Draws the random inputs of trial `trial`.
///
/// NLoS coefficients are normalized once, with the random-phase panels as
/// reference, so `|αᵀ h_NLoS|² = 1` under random phases and the other phase
/// policies act on the same physical channel at the same scale.
pub fn draw_trial(scenario: &Scenario, trial: usize) -> Result<TrialDraws> {
    scenario.validate()?;
    let wf_seed = if scenario.freeze_waveform {
        rng::derive_seed(scenario.master_seed, &[STREAM_WAVEFORM])
    } else {
        scenario.seed(trial, STREAM_WAVEFORM, 0)
    };
    let waveform = make_random_waveform(scenario.n, wf_seed)?;

    let (lo, hi) = scenario.doppler_range;
    let mut drng = rng::stream(scenario.seed(trial, STREAM_DOPPLER, 0));
    let dopplers = (0..=scenario.k)
        .map(|_| scenario.doppler_unit.to_radians(lo + (hi - lo) * drng.random::<f64>()))
        .collect();

    let mut white = rng::stream(scenario.seed(trial, STREAM_NOISE, 0));
    let white_noise = rng::complex_gaussian_vec(&mut white, scenario.n);

    for attempt in 0..MAX_RESAMPLE_ATTEMPTS {
        let channel_seed = scenario.seed(trial, STREAM_CHANNEL, attempt);
        let raw: RawChannels<f64> = match &scenario.csi {
            Some(panels) => draw_around_panels(panels.clone(), channel_seed)?,
            None => draw_csi(scenario.m, scenario.k, channel_seed)?,
        };
        let policy = PhasePolicy::Random {
            seed: scenario.seed(trial, STREAM_PHASE, attempt),
        };
        let random_panels = apply_policy(&raw.panels, &policy)?;
        let reference = path_coefficients(&random_panels, scenario.nlos_form);
        match normalize_scenario(raw, reference, scenario.gamma) {
            Ok(realization) => {
                let random_coefficients = realization.nlos_csi.clone();
                return Ok(TrialDraws {
                    waveform,
                    dopplers,
                    realization,
                    random_coefficients,
                    white_noise,
                    resamples: attempt,
                });
            }
            Err(Error::DegenerateDraw(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailure {
        attempts: MAX_RESAMPLE_ATTEMPTS,
    })
}

fn nlos_coefficients(scenario: &Scenario, draws: &TrialDraws, mode: LinkMode) -> Result<Vec<Complex64>> {
    let policy = match mode {
        LinkMode::NlosRandom => return Ok(draws.random_coefficients.clone()),
        LinkMode::NlosOptimal => PhasePolicy::Optimal,
        LinkMode::NlosFixed => PhasePolicy::Fixed(
            scenario
                .fixed_theta
                .clone()
                .ok_or_else(|| Error::Contract("fixed policy requires fixed phases".into()))?,
        ),
        LinkMode::LosOnly => unreachable!("LoS has no NLoS coefficients"),
    };
    let panels = apply_policy(&draws.realization.panels, &policy)?;
    let raw = path_coefficients(&panels, scenario.nlos_form);
    Ok(draws.realization.rescale_nlos(&raw))
}

/// Runs estimation and the bound for `mode` on pre-drawn inputs.
pub fn evaluate_mode(scenario: &Scenario, draws: &TrialDraws, mode: LinkMode) -> Result<TrialRecord> {
    let r = &draws.realization;
    let (dopplers, coefficients, truth): (&[f64], Vec<Complex64>, Vec<Complex64>) = match mode {
        LinkMode::LosOnly => (&draws.dopplers[..1], vec![r.h_los], vec![r.alpha_los]),
        _ => (
            &draws.dopplers[1..],
            nlos_coefficients(scenario, draws, mode)?,
            r.alpha.clone(),
        ),
    };
    let a = build_sensing_matrix(&draws.waveform, dopplers, &coefficients)?;
    let noise = NoiseModel::scaled_identity(scenario.n, scenario.sigma2)?;
    let clean = a.apply(&truth)?;
    let n = noise.color(&draws.white_noise)?;
    let y: Vec<Complex64> = clean.iter().zip(&n).map(|(s, n)| s + n).collect();
    let est = blue_estimate(&a, &noise, &y)?.with_truth(&truth)?;
    let bound = crb(&a, &noise)?;
    Ok(TrialRecord {
        nmse: est.nmse.expect("truth supplied"),
        mse: est.mse,
        crb_trace: bound.trace,
    })
}

/// One trial of `scenario.link_mode`.
pub fn run_trial(scenario: &Scenario, trial: usize) -> Result<TrialRecord> {
    let draws = draw_trial(scenario, trial)?;
    evaluate_mode(scenario, &draws, scenario.link_mode)
}

/// All swept modes on the same draws.
#[derive(Debug)]
pub struct PairedTrial {
    pub trial: usize,
    pub records: Vec<(LinkMode, Result<TrialRecord>)>,
}

impl PairedTrial {
    pub fn get(&self, mode: LinkMode) -> Option<&TrialRecord> {
        self.records
            .iter()
            .find(|(m, _)| *m == mode)
            .and_then(|(_, r)| r.as_ref().ok())
    }
}

pub fn run_paired_trial(scenario: &Scenario, trial: usize, modes: &[LinkMode]) -> PairedTrial {
    let records = match draw_trial(scenario, trial) {
        Ok(draws) => modes.iter().map(|&m| (m, evaluate_mode(scenario, &draws, m))).collect(),
        Err(e) => {
            let msg = e.to_string();
            modes
                .iter()
                .map(|&m| (m, Err(Error::Contract(format!("trial draw failed: {msg}")))))
                .collect()
        }
    };
    PairedTrial { trial, records }
}

/// `scenario.trials` paired trials, in trial order.
pub fn run_paired_trials(scenario: &Scenario, modes: &[LinkMode]) -> Vec<PairedTrial> {
    (0..scenario.trials)
        .into_par_iter()
        .map(|t| run_paired_trial(scenario, t, modes))
        .collect()
}

/// Aggregates for one (axis point, mode) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointStats {
    pub mean_nmse: f64,
    pub stderr_nmse: f64,
    pub mean_crb_trace: f64,
    pub stderr_crb_trace: f64,
    pub trials_used: usize,
    pub failures: usize,
}

impl PointStats {
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a Result<TrialRecord>>) -> Self {
        let mut nmse = Vec::new();
        let mut crb = Vec::new();
        let mut failures = 0;
        for r in records {
            match r {
                Ok(r) => {
                    nmse.push(r.nmse);
                    crb.push(r.crb_trace);
                }
                Err(_) => failures += 1,
            }
        }
        let (mean_nmse, stderr_nmse) = mean_stderr(&nmse);
        let (mean_crb_trace, stderr_crb_trace) = mean_stderr(&crb);
        Self {
            mean_nmse,
            stderr_nmse,
            mean_crb_trace,
            stderr_crb_trace,
            trials_used: nmse.len(),
            failures,
        }
    }
}

/// Sample mean and standard error (`s / sqrt(n)`, `n - 1` in the variance).
pub fn mean_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = v.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Nmse,
    CrbTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Gamma,
    Sigma2,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Gamma => "gamma",
            Axis::Sigma2 => "sigma2",
        }
    }

    fn apply(self, scenario: &Scenario, value: f64) -> Scenario {
        let mut s = scenario.clone();
        match self {
            Axis::Gamma => s.gamma = value,
            Axis::Sigma2 => s.sigma2 = value,
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSeries {
    pub mode: LinkMode,
    pub points: Vec<PointStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis_name: String,
    pub axis_values: Vec<f64>,
    pub log_axis: bool,
    /// Quantity a plot of this sweep shows.
    pub metric: Metric,
    /// One series per mode, sorted by mode name.
    pub series: Vec<ModeSeries>,
    pub trials_requested: usize,
}

impl SweepResult {
    pub fn series(&self, mode: LinkMode) -> Option<&ModeSeries> {
        self.series.iter().find(|s| s.mode == mode)
    }

    pub fn mean_nmse(&self, mode: LinkMode) -> Vec<f64> {
        self.series(mode)
            .map(|s| s.points.iter().map(|p| p.mean_nmse).collect())
            .unwrap_or_default()
    }

    pub fn mean_crb_trace(&self, mode: LinkMode) -> Vec<f64> {
        self.series(mode)
            .map(|s| s.points.iter().map(|p| p.mean_crb_trace).collect())
            .unwrap_or_default()
    }

    pub fn total_failures(&self) -> usize {
        self.series.iter().flat_map(|s| &s.points).map(|p| p.failures).sum()
    }
}

/// True when `values` are positive and geometrically spaced.
pub fn is_log_spaced(values: &[f64]) -> bool {
    if values.len() < 2 || values.iter().any(|&v| !(v > 0.0)) {
        return false;
    }
    if values.len() == 2 {
        return values[1] / values[0] >= 10.0 || values[0] / values[1] >= 10.0;
    }
    let r0 = (values[1] / values[0]).ln();
    values
        .windows(2)
        .all(|w| ((w[1] / w[0]).ln() - r0).abs() <= 1e-9 * r0.abs().max(1.0))
        && r0.abs() > 1e-12
}

pub fn log_space(min: f64, max: f64, points: usize) -> Vec<f64> {
    let (a, b) = (min.log10(), max.log10());
    (0..points)
        .map(|i| {
            if points == 1 {
                min
            } else if i + 1 == points {
                max
            } else {
                10f64.powf(a + (b - a) * i as f64 / (points - 1) as f64)
            }
        })
        .collect()
}

pub fn lin_space(min: f64, max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            if points == 1 {
                min
            } else if i + 1 == points {
                max
            } else {
                min + (max - min) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

/// Runs every swept mode at every axis value of `axis`.
pub fn sweep(template: &Scenario, axis: Axis, values: &[f64], metric: Metric) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::Contract("sweep axis is empty".into()));
    }
    for &v in values {
        axis.apply(template, v).validate()?;
        if !(v > 0.0) {
            return Err(Error::Contract(format!(
                "{} values must be positive (got {v})",
                axis.name()
            )));
        }
    }
    let modes = LinkMode::SWEPT;
    let mut cells: Vec<Vec<PointStats>> = vec![Vec::with_capacity(values.len()); modes.len()];
    for &v in values {
        let scenario = axis.apply(template, v);
        let trials = run_paired_trials(&scenario, &modes);
        for (mi, &mode) in modes.iter().enumerate() {
            let stats = PointStats::from_records(trials.iter().map(|t| {
                &t.records
                    .iter()
                    .find(|(m, _)| *m == mode)
                    .expect("every swept mode is evaluated")
                    .1
            }));
            cells[mi].push(stats);
        }
    }
    let mut series: Vec<ModeSeries> = modes
        .iter()
        .zip(cells)
        .map(|(&mode, points)| ModeSeries { mode, points })
        .collect();
    series.sort_by_key(|s| s.mode.as_str());
    Ok(SweepResult {
        axis_name: axis.name().to_string(),
        axis_values: values.to_vec(),
        log_axis: is_log_spaced(values),
        metric,
        series,
        trials_requested: template.trials,
    })
}

/// NMSE and CRB trace versus the LoS-to-NLoS SNR.
pub fn sweep_gamma(template: &Scenario, gamma_values: &[f64]) -> Result<SweepResult> {
    sweep(template, Axis::Gamma, gamma_values, Metric::Nmse)
}

/// NMSE versus noise variance at the template's `gamma`.
pub fn sweep_noise(template: &Scenario, sigma2_values: &[f64]) -> Result<SweepResult> {
    sweep(template, Axis::Sigma2, sigma2_values, Metric::Nmse)
}

/// CRB trace versus the LoS-to-NLoS SNR.
pub fn sweep_crb(template: &Scenario, gamma_values: &[f64]) -> Result<SweepResult> {
    sweep(template, Axis::Gamma, gamma_values, Metric::CrbTrace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Scenario {
        Scenario {
            n: 16,
            k: 3,
            m: 4,
            trials: 40,
            ..Scenario::default()
        }
    }

    #[test]
    fn defaults_match_experiment_setup() {
        let s = Scenario::default();
        assert_eq!((s.n, s.k, s.m, s.trials), (50, 5, 10, 1000));
        assert_eq!(s.doppler_range, (-0.5, 0.5));
        s.validate().unwrap();
    }

    #[test]
    fn trials_are_deterministic() {
        let s = small();
        for mode in [LinkMode::LosOnly, LinkMode::NlosOptimal, LinkMode::NlosRandom] {
            let a = run_trial(&s.with_mode(mode), 7).unwrap();
            let b = run_trial(&s.with_mode(mode), 7).unwrap();
            assert_eq!(a, b);
        }
        assert_ne!(run_trial(&s, 7).unwrap(), run_trial(&s, 8).unwrap());
    }

    #[test]
    fn noiseless_limit_recovers_exactly() {
        let s = Scenario {
            sigma2: 1e-24,
            ..small()
        };
        for mode in LinkMode::SWEPT {
            for t in 0..5 {
                let r = run_trial(&s.with_mode(mode), t).unwrap();
                assert!(r.nmse < 1e-6, "{mode} trial {t}: {}", r.nmse);
            }
        }
    }

    #[test]
    fn optimal_beats_random_per_realization() {
        let s = small();
        for t in 0..s.trials {
            let p = run_paired_trial(&s, t, &LinkMode::SWEPT);
            let opt = p.get(LinkMode::NlosOptimal).unwrap();
            let rnd = p.get(LinkMode::NlosRandom).unwrap();
            assert!(opt.mse <= rnd.mse, "trial {t}: {} > {}", opt.mse, rnd.mse);
        }
    }

    #[test]
    fn random_reference_is_normalized() {
        let s = small();
        let d = draw_trial(&s, 3).unwrap();
        let dot: Complex64 = d
            .realization
            .alpha
            .iter()
            .zip(&d.random_coefficients)
            .map(|(a, h)| a * h)
            .sum();
        assert!((dot.norm_sqr() - 1.0).abs() < 1e-10);
        assert!(((d.realization.alpha_los * d.realization.h_los).norm_sqr() - s.gamma).abs() < 1e-12);
    }

    #[test]
    fn fixed_policy_requires_phases() {
        let mut s = small().with_mode(LinkMode::NlosFixed);
        assert!(s.validate().is_err());
        s.fixed_theta = Some(vec![vec![0.0; 4]; 3]);
        run_trial(&s, 0).unwrap();
    }

    #[test]
    fn frozen_waveform_is_shared() {
        let s = Scenario {
            freeze_waveform: true,
            ..small()
        };
        assert_eq!(draw_trial(&s, 0).unwrap().waveform, draw_trial(&s, 5).unwrap().waveform);
        let s = small();
        assert_ne!(draw_trial(&s, 0).unwrap().waveform, draw_trial(&s, 5).unwrap().waveform);
    }

    #[test]
    fn sweep_shapes_and_order() {
        let s = Scenario { trials: 10, ..small() };
        let r = sweep_gamma(&s, &[1e-2, 1.0, 1e2]).unwrap();
        assert_eq!(r.series.len(), 3);
        let names: Vec<_> = r.series.iter().map(|s| s.mode.as_str()).collect();
        assert_eq!(names, ["los_only", "nlos_optimal", "nlos_random"]);
        assert!(r.series.iter().all(|s| s.points.len() == 3));
        assert!(r.log_axis);
        assert!(sweep_gamma(&s, &[]).is_err());
        assert!(sweep_gamma(&s, &[-1.0]).is_err());
    }

    #[test]
    fn spacing_helpers() {
        let v = log_space(1e-5, 1e5, 21);
        assert_eq!(v.len(), 21);
        assert_eq!(v[0], 1e-5);
        assert_eq!(v[20], 1e5);
        assert!((v[10] - 1.0).abs() < 1e-12);
        assert!(is_log_spaced(&v));
        assert!(!is_log_spaced(&lin_space(1.0, 5.0, 5)));
    }

    #[test]
    fn mean_stderr_basic() {
        let (m, s) = mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }
}
