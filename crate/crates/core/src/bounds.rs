//! Cramér-Rao bound for the real-composite reflectivity `[α_R; α_I]`.
//!
//! With `y ~ CN(Aα, R)` and `R` independent of `α`, the Slepian-Bangs
//! covariance-derivative term vanishes and only the mean term remains:
//!
//! ```text
//! J = [ 2Re{G}  -2Im{G} ]      G = AᴴR⁻¹A
//!     [ 2Im{G}   2Re{G} ]
//! ```
//!
//! Rows and columns `0..K` index `α_R`, `K..2K` index `α_I`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::estimator::{information_matrix, NoiseModel, MAX_CONDITION};
use crate::linalg::{guarded_inverse, kronecker, CMatrix, Matrix};
use crate::model::SensingMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct CrbReport<T> {
    pub fim: Matrix<T>,
    pub crb: Matrix<T>,
    /// `Tr(C_CRB)`, the A-optimality scalarization.
    pub trace: T,
}

impl<T: Real> CrbReport<T> {
    /// Bound on `var(Re α̂_k) + var(Im α̂_k)`.
    pub fn path_bound(&self, k: usize) -> T {
        let paths = self.crb.rows() / 2;
        self.crb[(k, k)] + self.crb[(paths + k, paths + k)]
    }
}

/// Block assembly of the FIM from `G = AᴴR⁻¹A`.
pub fn fim_from_information<T: Real>(g: &CMatrix<T>) -> Matrix<T> {
    let k = g.rows();
    let two = T::lit(2.0);
    Matrix::from_fn(2 * k, 2 * k, |i, j| {
        let v = g[(i % k, j % k)];
        match (i < k, j < k) {
            (true, true) | (false, false) => two * v.re,
            (true, false) => -two * v.im,
            (false, true) => two * v.im,
        }
    })
}

/// `2 Re{[1 j]ᴴ ⊗ [1 j] ⊗ G}`, built from explicit Kronecker products.
pub fn fim_kronecker<T: Real>(g: &CMatrix<T>) -> Matrix<T> {
    let one = Complex::new(T::one(), T::zero());
    let j = Complex::new(T::zero(), T::one());
    let row = Matrix::from_fn(1, 2, |_, c| if c == 0 { one } else { j });
    let col = row.conj_transpose();
    let outer = kronecker(&kronecker(&col, &row), g);
    outer.map(|v| T::lit(2.0) * v.re)
}

pub fn fisher_information<T: Real>(a: &SensingMatrix<T>, noise: &NoiseModel<T>) -> Result<Matrix<T>> {
    Ok(fim_from_information(&information_matrix(a, noise)?))
}

pub fn crb<T: Real>(a: &SensingMatrix<T>, noise: &NoiseModel<T>) -> Result<CrbReport<T>> {
    let fim = fisher_information(a, noise)?;
    crb_from_fim(fim)
}

pub fn crb_from_fim<T: Real>(fim: Matrix<T>) -> Result<CrbReport<T>> {
    let (_, crb, _) = guarded_inverse(&fim, MAX_CONDITION).map_err(|e| match e {
        Error::SingularModel { condition, .. } => Error::UnboundedBound { condition },
        other => other,
    })?;
    let trace = crb.trace();
    Ok(CrbReport { fim, crb, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::estimator_mse;
    use crate::model::{build_sensing_matrix, make_random_waveform, Waveform};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unitary_model(k: usize) -> SensingMatrix<f64> {
        let x = Waveform::from_phases(&vec![0.0; k]).unwrap();
        let nus: Vec<f64> = (0..k).map(|i| std::f64::consts::TAU * i as f64 / k as f64).collect();
        build_sensing_matrix(&x, &nus, &vec![c(1.0 / (k as f64).sqrt(), 0.0); k]).unwrap()
    }

    #[test]
    fn unit_scalar_model() {
        let x = Waveform::from_phases(&[0.0]).unwrap();
        let a = build_sensing_matrix(&x, &[0.0], &[c(1.0, 0.0)]).unwrap();
        let noise = NoiseModel::scaled_identity(1, 1.0).unwrap();
        let j = fisher_information(&a, &noise).unwrap();
        assert_eq!(j.as_slice(), &[2.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn diagonal_model_splits_variance() {
        let a = unitary_model(3);
        let noise = NoiseModel::scaled_identity(3, 0.4).unwrap();
        let r = crb(&a, &noise).unwrap();
        assert!(r.crb.max_abs_diff(&Matrix::identity(6).scale(0.2)) < 1e-13);
        assert!((r.trace - 1.2).abs() < 1e-12);
    }

    #[test]
    fn block_and_kronecker_agree() {
        let x = make_random_waveform::<f64>(20, 6).unwrap();
        let a = build_sensing_matrix(&x, &[0.1, 1.3, -2.2], &[c(1.0, 0.2), c(-0.4, 0.9), c(0.3, -0.3)]).unwrap();
        let noise = NoiseModel::scaled_identity(20, 0.05).unwrap();
        let g = information_matrix(&a, &noise).unwrap();
        assert!(fim_from_information(&g).max_abs_diff(&fim_kronecker(&g)) < 1e-13);
    }

    #[test]
    fn scaling_noise_scales_fim() {
        let x = make_random_waveform::<f64>(10, 6).unwrap();
        let a = build_sensing_matrix(&x, &[0.1, 1.3], &[c(1.0, 0.2), c(-0.4, 0.9)]).unwrap();
        let j1 = fisher_information(&a, &NoiseModel::scaled_identity(10, 1.0).unwrap()).unwrap();
        let j4 = fisher_information(&a, &NoiseModel::scaled_identity(10, 4.0).unwrap()).unwrap();
        assert!(j1.scale(0.25).max_abs_diff(&j4) < 1e-13);
    }

    #[test]
    fn trace_equals_estimator_mse() {
        let x = make_random_waveform::<f64>(30, 8).unwrap();
        let a = build_sensing_matrix(
            &x,
            &[0.5, -0.9, 2.5, 1.7],
            &[c(1.0, 0.0), c(0.0, 2.0), c(-0.5, 0.5), c(0.7, 0.1)],
        )
        .unwrap();
        let noise = NoiseModel::scaled_identity(30, 0.3).unwrap();
        let r = crb(&a, &noise).unwrap();
        let mse = estimator_mse(&a, &noise).unwrap();
        assert!((r.trace - mse).abs() < 1e-10 * mse.max(1.0));
        assert!(r.fim.hermitian_defect() < 1e-12);
    }

    #[test]
    fn singular_fim_is_unbounded() {
        let j = Matrix::from_row_major(2, 2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(crb_from_fim(j), Err(Error::UnboundedBound { .. })));
    }
}
