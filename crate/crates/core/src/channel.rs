//! Channel state: per-IRS CSI pairs, path coefficients and the LoS/NLoS
//! strength normalization.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::{cis, Real};

/// One IRS platform: radar→IRS CSI `g`, IRS→target CSI `h`, element phases
/// `theta` and amplitude gains `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsPanel<T> {
    g: Vec<Complex<T>>,
    h: Vec<Complex<T>>,
    theta: Vec<T>,
    beta: Vec<T>,
}

impl<T: Real> IrsPanel<T> {
    /// Panel with zero phases and unit gains.
    pub fn new(g: Vec<Complex<T>>, h: Vec<Complex<T>>) -> Result<Self> {
        let m = g.len();
        Self::with_phases(g, h, vec![T::zero(); m])
    }

    pub fn with_phases(g: Vec<Complex<T>>, h: Vec<Complex<T>>, theta: Vec<T>) -> Result<Self> {
        let m = g.len();
        Self::with_gains(g, h, theta, vec![T::one(); m])
    }

    pub fn with_gains(g: Vec<Complex<T>>, h: Vec<Complex<T>>, theta: Vec<T>, beta: Vec<T>) -> Result<Self> {
        let m = g.len();
        if m == 0 {
            return Err(Error::Contract("an IRS panel needs at least one element".into()));
        }
        for (what, len) in [("IRS h", h.len()), ("IRS theta", theta.len()), ("IRS beta", beta.len())] {
            if len != m {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: m,
                    found: len,
                });
            }
        }
        if beta.iter().any(|&b| !(b >= T::zero() && b <= T::one())) {
            return Err(Error::Contract("IRS amplitude gains must lie in [0, 1]".into()));
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("IRS phases"));
        }
        Ok(Self { g, h, theta, beta })
    }

    pub fn elements(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &[Complex<T>] {
        &self.g
    }

    pub fn h(&self) -> &[Complex<T>] {
        &self.h
    }

    pub fn theta(&self) -> &[T] {
        &self.theta
    }

    pub fn beta(&self) -> &[T] {
        &self.beta
    }

    /// Same channels, new phases.
    pub fn rephased(&self, theta: Vec<T>) -> Result<Self> {
        Self::with_gains(self.g.clone(), self.h.clone(), theta, self.beta.clone())
    }

    /// `diag(Θ) = β ⊙ e^{jθ}`.
    pub fn reflection(&self) -> Vec<Complex<T>> {
        self.theta.iter().zip(&self.beta).map(|(&t, &b)| cis(t) * b).collect()
    }

    /// `c = Diag(g)ᴴ h`, i.e. `c_m = conj(g_m) h_m`.
    pub fn cascade(&self) -> Vec<Complex<T>> {
        self.g.iter().zip(&self.h).map(|(g, h)| g.conj() * h).collect()
    }
}

/// How a panel's cascaded response becomes the path coefficient `h_NLoS,k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NlosForm {
    /// `|hᴴΘg|²`, a real nonnegative power.
    MagnitudeSquared,
    /// `hᴴΘg`, the complex amplitude.
    #[default]
    Complex,
}

impl NlosForm {
    pub fn as_str(self) -> &'static str {
        match self {
            NlosForm::MagnitudeSquared => "magnitude_squared",
            NlosForm::Complex => "complex",
        }
    }
}

impl fmt::Display for NlosForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NlosForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "magnitude_squared" => Ok(NlosForm::MagnitudeSquared),
            "complex" => Ok(NlosForm::Complex),
            other => Err(Error::Parse(format!(
                "unknown NLoS form `{other}` (expected magnitude_squared or complex)"
            ))),
        }
    }
}

/// `hᴴ Θ g` as the explicit sum `Σ conj(h_m) Θ_mm g_m`.
fn direct_inner_product<T: Real>(panel: &IrsPanel<T>) -> Complex<T> {
    panel
        .h
        .iter()
        .zip(panel.reflection())
        .zip(&panel.g)
        .map(|((h, r), g)| h.conj() * r * g)
        .sum()
}

/// `hᴴ Θ g` evaluated as `cᴴ diag(Θ)`.
pub fn inner_product_form<T: Real>(panel: &IrsPanel<T>) -> Complex<T> {
    panel
        .cascade()
        .into_iter()
        .zip(panel.reflection())
        .map(|(c, r)| c.conj() * r)
        .sum()
}

/// `|hᴴ Θ g|²` with zero imaginary part.
pub fn compose_nlos_coefficient<T: Real>(panel: &IrsPanel<T>) -> Complex<T> {
    Complex::new(direct_inner_product(panel).norm_sqr(), T::zero())
}

pub fn path_coefficient<T: Real>(panel: &IrsPanel<T>, form: NlosForm) -> Complex<T> {
    match form {
        NlosForm::MagnitudeSquared => compose_nlos_coefficient(panel),
        NlosForm::Complex => inner_product_form(panel),
    }
}

pub fn path_coefficients<T: Real>(panels: &[IrsPanel<T>], form: NlosForm) -> Vec<Complex<T>> {
    panels.iter().map(|p| path_coefficient(p, form)).collect()
}

/// Unnormalized channel draw.
#[derive(Debug, Clone, PartialEq)]
pub struct RawChannels<T> {
    pub h_los: Complex<T>,
    pub panels: Vec<IrsPanel<T>>,
    pub alpha: Vec<Complex<T>>,
    pub alpha_los: Complex<T>,
}

/// Draws every CSI entry and reflectivity i.i.d. `CN(0, 1)`. Panels start
/// with zero phases and unit gains.
pub fn draw_csi<T: Real>(m: usize, k: usize, seed: u64) -> Result<RawChannels<T>> {
    if m == 0 || k == 0 {
        return Err(Error::Contract(format!("need M >= 1 and K >= 1 (got M={m}, K={k})")));
    }
    let mut rng = rng::stream(seed);
    let h_los = rng::complex_gaussian(&mut rng);
    let alpha_los = rng::complex_gaussian(&mut rng);
    let alpha = rng::complex_gaussian_vec(&mut rng, k);
    let panels = (0..k)
        .map(|_| {
            let g = rng::complex_gaussian_vec(&mut rng, m);
            let h = rng::complex_gaussian_vec(&mut rng, m);
            IrsPanel::new(g, h)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawChannels {
        h_los,
        panels,
        alpha,
        alpha_los,
    })
}

/// Draws `(h_LoS, α, α_T)` around externally supplied panels.
pub fn draw_around_panels<T: Real>(panels: Vec<IrsPanel<T>>, seed: u64) -> Result<RawChannels<T>> {
    if panels.is_empty() {
        return Err(Error::Contract("need at least one panel".into()));
    }
    let mut rng = rng::stream(seed);
    let h_los = rng::complex_gaussian(&mut rng);
    let alpha_los = rng::complex_gaussian(&mut rng);
    let alpha = rng::complex_gaussian_vec(&mut rng, panels.len());
    Ok(RawChannels {
        h_los,
        panels,
        alpha,
        alpha_los,
    })
}

/// Channels rescaled so that `|α_T h_LoS|² = γ` and `|αᵀ h_NLoS|² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization<T> {
    pub h_los: Complex<T>,
    pub panels: Vec<IrsPanel<T>>,
    pub alpha: Vec<Complex<T>>,
    pub alpha_los: Complex<T>,
    pub nlos_csi: Vec<Complex<T>>,
    pub gamma: T,
    /// Positive factor applied to the composed NLoS coefficients.
    pub nlos_scale: T,
}

impl<T: Real> ChannelRealization<T> {
    /// Applies this realization's NLoS scale to coefficients composed from
    /// the same physical channels under different phases.
    pub fn rescale_nlos(&self, coefficients: &[Complex<T>]) -> Vec<Complex<T>> {
        coefficients.iter().map(|&c| c * self.nlos_scale).collect()
    }

    /// `|α_T h_LoS|² / |αᵀ h_NLoS|²`.
    pub fn los_to_nlos_snr(&self) -> T {
        los_to_nlos_snr(self.alpha_los, self.h_los, &self.alpha, &self.nlos_csi)
    }
}

fn alpha_dot<T: Real>(alpha: &[Complex<T>], csi: &[Complex<T>]) -> Complex<T> {
    alpha.iter().zip(csi).map(|(a, h)| a * h).sum()
}

/// `γ = |α_T h_LoS|² / |αᵀ h_NLoS|²`.
pub fn los_to_nlos_snr<T: Real>(
    alpha_los: Complex<T>,
    h_los: Complex<T>,
    alpha: &[Complex<T>],
    nlos_csi: &[Complex<T>],
) -> T {
    (alpha_los * h_los).norm_sqr() / alpha_dot(alpha, nlos_csi).norm_sqr()
}

/// Rescales magnitudes (never phases) of `h_LoS` and the composed NLoS
/// coefficients to hit the requested LoS-to-NLoS SNR.
pub fn normalize_scenario<T: Real>(
    raw: RawChannels<T>,
    nlos_csi: Vec<Complex<T>>,
    gamma: T,
) -> Result<ChannelRealization<T>> {
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::Contract("gamma must be finite and nonnegative".into()));
    }
    if nlos_csi.len() != raw.alpha.len() {
        return Err(Error::DimensionMismatch {
            what: "NLoS coefficients vs reflectivities",
            expected: raw.alpha.len(),
            found: nlos_csi.len(),
        });
    }
    let nlos_strength = alpha_dot(&raw.alpha, &nlos_csi).norm();
    if !(nlos_strength > T::zero()) || !nlos_strength.is_finite() {
        return Err(Error::DegenerateDraw("alpha^T h_NLoS is zero"));
    }
    let los_strength = (raw.alpha_los * raw.h_los).norm();
    if !(los_strength > T::zero()) || !los_strength.is_finite() {
        return Err(Error::DegenerateDraw("alpha_T h_LoS is zero"));
    }
    let nlos_scale = nlos_strength.recip();
    let los_scale = gamma.sqrt() / los_strength;
    Ok(ChannelRealization {
        h_los: raw.h_los * los_scale,
        panels: raw.panels,
        alpha: raw.alpha,
        alpha_los: raw.alpha_los,
        nlos_csi: nlos_csi.into_iter().map(|c| c * nlos_scale).collect(),
        gamma,
        nlos_scale,
    })
}

/// Parses the CSI replay format: one `re,im` pair per line, `K` panels
/// concatenated as `g` (M lines) then `h` (M lines). Blank lines and `#`
/// comments are ignored.
pub fn parse_csi<T: Real>(text: &str, k: usize, m: usize) -> Result<Vec<IrsPanel<T>>> {
    let mut values = Vec::with_capacity(2 * k * m);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (re, im) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("CSI line {}: expected `re,im`", lineno + 1)))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("CSI line {}: {e}", lineno + 1)))
        };
        let (re, im) = (parse(re)?, parse(im)?);
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::Parse(format!("CSI line {}: non-finite value", lineno + 1)));
        }
        values.push(Complex::new(T::lit(re), T::lit(im)));
    }
    if values.len() != 2 * k * m {
        return Err(Error::Parse(format!(
            "CSI file has {} entries, expected K*2*M = {}",
            values.len(),
            2 * k * m
        )));
    }
    values
        .chunks(2 * m)
        .map(|chunk| IrsPanel::new(chunk[..m].to_vec(), chunk[m..].to_vec()))
        .collect()
}

/// Writes panels in the replay format read by [`parse_csi`].
pub fn format_csi<T: Real>(panels: &[IrsPanel<T>]) -> String {
    let mut out = String::new();
    for p in panels {
        for v in p.g().iter().chain(p.h()) {
            out.push_str(&format!("{:e},{:e}\n", v.re, v.im));
        }
    }
    out
}
