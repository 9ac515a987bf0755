//! IRS phase design.
//!
//! The estimator MSE separates over paths as `Σ_k Ψ_kk / |h_NLoS,k|²`, so
//! every panel is tuned on its own by maximizing `|hᴴΘg| = |cᴴ diag(Θ)|`.
//! With unit gains that maximum is `‖c‖₁`, reached at `θ = arg(c)`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::channel::{inner_product_form, IrsPanel};
use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::{cis, wrap_phase, Real};

/// Largest panel size accepted by [`certify_optimum`].
pub const MAX_CERTIFY_ELEMENTS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum PhasePolicy<T> {
    /// `θ = arg(Diag(g)ᴴ h)` per panel.
    Optimal,
    /// i.i.d. uniform phases on `[0, 2π)`.
    Random { seed: u64 },
    /// Caller-supplied phases, one vector per panel.
    Fixed(Vec<Vec<T>>),
}

impl<T> PhasePolicy<T> {
    pub fn name(&self) -> &'static str {
        match self {
            PhasePolicy::Optimal => "optimal",
            PhasePolicy::Random { .. } => "random",
            PhasePolicy::Fixed(_) => "fixed",
        }
    }
}

/// Closed-form optimal phases wrapped to `[0, 2π)`; elements with a zero
/// cascade coefficient get phase 0.
pub fn optimal_phases<T: Real>(g: &[Complex<T>], h: &[Complex<T>]) -> Result<Vec<T>> {
    if g.is_empty() {
        return Err(Error::Contract("a panel needs at least one element".into()));
    }
    if g.len() != h.len() {
        return Err(Error::DimensionMismatch {
            what: "IRS h",
            expected: g.len(),
            found: h.len(),
        });
    }
    Ok(g.iter()
        .zip(h)
        .map(|(g, h)| {
            let c = g.conj() * h;
            if c.norm_sqr() == T::zero() {
                T::zero()
            } else {
                wrap_phase(c.arg())
            }
        })
        .collect())
}

pub fn apply_policy<T: Real>(panels: &[IrsPanel<T>], policy: &PhasePolicy<T>) -> Result<Vec<IrsPanel<T>>> {
    match policy {
        PhasePolicy::Optimal => panels
            .par_iter()
            .map(|p| p.rephased(optimal_phases(p.g(), p.h())?))
            .collect(),
        PhasePolicy::Random { seed } => {
            let mut rng = rng::stream(*seed);
            panels
                .iter()
                .map(|p| {
                    let theta = (0..p.elements()).map(|_| rng::uniform_phase(&mut rng)).collect();
                    p.rephased(theta)
                })
                .collect()
        }
        PhasePolicy::Fixed(thetas) => {
            if thetas.len() != panels.len() {
                return Err(Error::DimensionMismatch {
                    what: "fixed phase vectors",
                    expected: panels.len(),
                    found: thetas.len(),
                });
            }
            panels.iter().zip(thetas).map(|(p, t)| p.rephased(t.clone())).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certification<T> {
    pub elements: usize,
    pub grid_points: usize,
    /// Best `|hᴴΘg|` found on the phase grid.
    pub grid_max: T,
    /// `|hᴴΘ*g|` at the closed-form phases.
    pub closed_form: T,
    /// `Σ β_m |c_m|`.
    pub l1_norm: T,
    /// `l1_norm - grid_max`.
    pub gap: T,
    /// Worst-case quantization loss `l1_norm (1 - cos(π / grid_points))`.
    pub bound: T,
}

impl<T: Real> Certification<T> {
    pub fn within_bound(&self) -> bool {
        let slack = T::lit(1e-12) * self.l1_norm.max(T::one());
        self.gap >= -slack && self.gap <= self.bound + slack
    }
}

/// Exhaustive search of `|hᴴΘg|` over a uniform grid of `grid_points`
/// phases per element, compared with the closed form.
///
/// The objective is invariant to a common rotation of all phases, and a
/// rotation by a grid step maps the grid onto itself, so the first phase is
/// pinned to zero without losing any grid maximum.
pub fn certify_optimum<T: Real>(panel: &IrsPanel<T>, grid_points: usize) -> Result<Certification<T>> {
    let m = panel.elements();
    if m > MAX_CERTIFY_ELEMENTS {
        return Err(Error::Capability(format!(
            "exhaustive phase search supports at most {MAX_CERTIFY_ELEMENTS} elements (got {m})"
        )));
    }
    if grid_points == 0 {
        return Err(Error::Contract("grid needs at least one point per phase".into()));
    }
    // terms[m][i] = conj(c_m) β_m e^{j 2π i / G}
    let step = T::TAU() / T::lit(grid_points as f64);
    let cascade = panel.cascade();
    let terms: Vec<Vec<Complex<T>>> = cascade
        .iter()
        .zip(panel.beta())
        .map(|(c, &b)| {
            (0..grid_points)
                .map(|i| c.conj() * b * cis(step * T::lit(i as f64)))
                .collect()
        })
        .collect();

    let mut best = T::zero();
    let mut idx = vec![0usize; m];
    loop {
        let v: Complex<T> = terms.iter().zip(&idx).map(|(t, &i)| t[i]).sum();
        best = best.max(v.norm());
        // odometer over elements 1..m
        let mut e = 1;
        while e < m {
            idx[e] += 1;
            if idx[e] < grid_points {
                break;
            }
            idx[e] = 0;
            e += 1;
        }
        if e >= m {
            break;
        }
    }

    let optimal = panel.rephased(optimal_phases(panel.g(), panel.h())?)?;
    let closed_form = inner_product_form(&optimal).norm();
    let l1_norm: T = cascade.iter().zip(panel.beta()).map(|(c, &b)| c.norm() * b).sum();
    let half_step = T::PI() / T::lit(grid_points as f64);
    Ok(Certification {
        elements: m,
        grid_points,
        grid_max: best,
        closed_form,
        l1_norm,
        gap: l1_norm - best,
        bound: l1_norm * (T::one() - half_step.cos()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::draw_csi;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_element_coherent_combining() {
        let theta = optimal_phases(&[c(1.0, 0.0)], &[c(0.0, 1.0)]).unwrap();
        assert!((theta[0] - PI / 2.0).abs() < 1e-15);
        let p = IrsPanel::with_phases(vec![c(1.0, 0.0)], vec![c(0.0, 1.0)], theta).unwrap();
        let v = inner_product_form(&p);
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn matched_channels_attain_energy() {
        let raw = draw_csi::<f64>(7, 1, 3).unwrap();
        let g = raw.panels[0].g().to_vec();
        let theta = optimal_phases(&g, &g).unwrap();
        let p = IrsPanel::with_phases(g.clone(), g.clone(), theta).unwrap();
        let energy: f64 = g.iter().map(|v| v.norm_sqr()).sum();
        assert!((inner_product_form(&p).norm() - energy).abs() < 1e-12);
    }

    #[test]
    fn zero_cascade_maps_to_zero_phase() {
        let theta = optimal_phases(&[c(0.0, 0.0), c(1.0, 1.0)], &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(theta[0], 0.0);
        assert!((0.0..2.0 * PI).contains(&theta[1]));
    }

    #[test]
    fn policies() {
        let raw = draw_csi::<f64>(4, 5, 10).unwrap();
        let joint = apply_policy(&raw.panels, &PhasePolicy::Optimal).unwrap();
        for (p, j) in raw.panels.iter().zip(&joint) {
            let alone = apply_policy(std::slice::from_ref(p), &PhasePolicy::Optimal).unwrap();
            assert_eq!(&alone[0], j);
        }

        let r1 = apply_policy(&raw.panels, &PhasePolicy::Random { seed: 4 }).unwrap();
        let r2 = apply_policy(&raw.panels, &PhasePolicy::Random { seed: 4 }).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.iter().flat_map(|p| p.theta()).all(|t| (0.0..2.0 * PI).contains(t)));

        let fixed: Vec<Vec<f64>> = (0..5).map(|k| vec![0.1 * k as f64; 4]).collect();
        let f = apply_policy(&raw.panels, &PhasePolicy::Fixed(fixed.clone())).unwrap();
        for (p, t) in f.iter().zip(&fixed) {
            assert_eq!(p.theta(), t.as_slice());
        }
        assert!(apply_policy(&raw.panels, &PhasePolicy::Fixed(vec![vec![0.0; 3]; 5])).is_err());
        assert!(apply_policy(&raw.panels, &PhasePolicy::Fixed(vec![vec![0.0; 4]; 4])).is_err());
    }

    #[test]
    fn certify_single_element() {
        let raw = draw_csi::<f64>(1, 1, 12).unwrap();
        let cert = certify_optimum(&raw.panels[0], 360).unwrap();
        assert!(cert.within_bound(), "{cert:?}");
        let l1 = raw.panels[0].cascade()[0].norm();
        assert!(cert.bound <= l1 * (1.0 - (PI / 360.0).cos()) + 1e-15);
    }

    #[test]
    fn certify_aligned_channel_is_exact() {
        // c real positive: the grid point θ = 0 is optimal
        let p = IrsPanel::new(vec![c(2.0, 0.0)], vec![c(1.5, 0.0)]).unwrap();
        let cert = certify_optimum(&p, 360).unwrap();
        assert_eq!(cert.grid_max, 3.0);
        assert_eq!(cert.gap, 0.0);
    }

    #[test]
    fn certify_two_elements_many_panels() {
        for seed in 0..100 {
            let raw = draw_csi::<f64>(2, 1, 1000 + seed).unwrap();
            let cert = certify_optimum(&raw.panels[0], 90).unwrap();
            assert!(cert.within_bound(), "seed {seed}: {cert:?}");
            assert!((cert.closed_form - cert.l1_norm).abs() < 1e-12);
        }
    }

    #[test]
    fn certify_rejects_large_panels() {
        let raw = draw_csi::<f64>(5, 1, 1).unwrap();
        assert!(matches!(certify_optimum(&raw.panels[0], 8), Err(Error::Capability(_))));
    }
}
