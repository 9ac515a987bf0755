//! Best linear unbiased estimation of the path reflectivities.
//!
//! With `y = A α + n` and `n ~ CN(0, R)`, the BLUE is
//! `α̂ = (AᴴR⁻¹A)⁻¹ AᴴR⁻¹ y` with covariance `(AᴴR⁻¹A)⁻¹`. `R` is only ever
//! used through its Cholesky factor (whitening), never inverted.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{guarded_inverse, CMatrix, Cholesky, Matrix};
use crate::model::SensingMatrix;
use crate::scalar::Real;

/// Largest accepted 1-norm condition number of the whitened Gram matrix.
pub const MAX_CONDITION: f64 = 1e12;

/// Zero-mean complex Gaussian noise with covariance `R`.
#[derive(Debug, Clone)]
pub struct NoiseModel<T> {
    covariance: CMatrix<T>,
    sigma2: Option<T>,
    factor: Option<Cholesky<Complex<T>>>,
}

impl<T: Real> NoiseModel<T> {
    /// `R = σ² I_N`.
    pub fn scaled_identity(n: usize, sigma2: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::Contract("noise dimension must be positive".into()));
        }
        if !(sigma2 > T::zero()) || !sigma2.is_finite() {
            return Err(Error::Contract(format!(
                "noise variance must be positive and finite (got {sigma2})"
            )));
        }
        Ok(Self {
            covariance: Matrix::identity(n).scale(Complex::new(sigma2, T::zero())),
            sigma2: Some(sigma2),
            factor: None,
        })
    }

    /// General Hermitian positive-definite covariance.
    pub fn from_covariance(covariance: CMatrix<T>) -> Result<Self> {
        if !covariance.is_square() {
            return Err(Error::DimensionMismatch {
                what: "noise covariance columns",
                expected: covariance.rows(),
                found: covariance.cols(),
            });
        }
        let tol = T::lit(1e-12) * covariance.max_abs().max(T::one());
        if covariance.hermitian_defect() > tol {
            return Err(Error::Contract("noise covariance is not Hermitian".into()));
        }
        let factor = Cholesky::new(&covariance)?;
        Ok(Self {
            covariance,
            sigma2: None,
            factor: Some(factor),
        })
    }

    pub fn dim(&self) -> usize {
        self.covariance.rows()
    }

    pub fn covariance(&self) -> &CMatrix<T> {
        &self.covariance
    }

    pub fn is_scaled_identity(&self) -> bool {
        self.sigma2.is_some()
    }

    pub fn sigma2(&self) -> Option<T> {
        self.sigma2
    }

    /// Colors a white `CN(0, I)` vector: returns `L w` with `R = L Lᴴ`.
    pub fn color(&self, white: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_len(white.len())?;
        match (&self.factor, self.sigma2) {
            (Some(ch), _) => ch.factor().matvec(white),
            (None, Some(s2)) => Ok(white.iter().map(|w| w * s2.sqrt()).collect()),
            (None, None) => unreachable!("noise model without factor or variance"),
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "noise dimension",
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }

    /// `L⁻¹ v`, scaled so that whitened noise has identity covariance.
    fn whiten_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_len(v.len())?;
        Ok(match (&self.factor, self.sigma2) {
            (Some(ch), _) => ch.forward(v),
            (_, Some(s2)) => v.iter().map(|x| x / s2.sqrt()).collect(),
            (None, None) => unreachable!(),
        })
    }

    fn whiten_matrix(&self, a: &CMatrix<T>) -> Result<CMatrix<T>> {
        self.check_len(a.rows())?;
        match (&self.factor, self.sigma2) {
            (Some(ch), _) => ch.forward_matrix(a),
            (_, Some(s2)) => Ok(a.scale(Complex::new(s2.sqrt().recip(), T::zero()))),
            (None, None) => unreachable!(),
        }
    }
}

/// Information matrix `AᴴR⁻¹A`.
pub fn information_matrix<T: Real>(a: &SensingMatrix<T>, noise: &NoiseModel<T>) -> Result<CMatrix<T>> {
    Ok(noise.whiten_matrix(a.matrix())?.gram())
}

#[derive(Debug, Clone)]
pub struct EstimationReport<T> {
    pub alpha_hat: Vec<Complex<T>>,
    /// `C_α̂ = (AᴴR⁻¹A)⁻¹`.
    pub covariance: CMatrix<T>,
    pub mse: T,
    /// Filled in by [`EstimationReport::with_truth`].
    pub nmse: Option<T>,
    pub condition: f64,
}

impl<T: Real> EstimationReport<T> {
    pub fn with_truth(mut self, alpha: &[Complex<T>]) -> Result<Self> {
        self.nmse = Some(nmse(alpha, &self.alpha_hat)?);
        Ok(self)
    }
}

pub fn blue_estimate<T: Real>(
    a: &SensingMatrix<T>,
    noise: &NoiseModel<T>,
    y: &[Complex<T>],
) -> Result<EstimationReport<T>> {
    if y.len() != a.samples() {
        return Err(Error::DimensionMismatch {
            what: "observation length",
            expected: a.samples(),
            found: y.len(),
        });
    }
    if noise.dim() != a.samples() {
        return Err(Error::DimensionMismatch {
            what: "noise dimension",
            expected: a.samples(),
            found: noise.dim(),
        });
    }
    let aw = noise.whiten_matrix(a.matrix())?;
    let yw = noise.whiten_vec(y)?;
    let gram = aw.gram();
    let (chol, covariance, condition) = guarded_inverse(&gram, MAX_CONDITION)?;
    let alpha_hat = chol.solve(&aw.adjoint_matvec(&yw)?)?;
    let mse = covariance.trace().re;
    Ok(EstimationReport {
        alpha_hat,
        covariance,
        mse,
        nmse: None,
        condition,
    })
}

/// `Tr((AᴴR⁻¹A)⁻¹)`.
pub fn estimator_mse<T: Real>(a: &SensingMatrix<T>, noise: &NoiseModel<T>) -> Result<T> {
    let gram = information_matrix(a, noise)?;
    let (_, inv, _) = guarded_inverse(&gram, MAX_CONDITION)?;
    Ok(inv.trace().re)
}

/// `‖α − α̂‖₂ / ‖α‖₂` (a ratio of norms, not squared).
pub fn nmse<T: Real>(alpha_true: &[Complex<T>], alpha_hat: &[Complex<T>]) -> Result<T> {
    if alpha_true.len() != alpha_hat.len() {
        return Err(Error::DimensionMismatch {
            what: "estimate length",
            expected: alpha_true.len(),
            found: alpha_hat.len(),
        });
    }
    let norm: T = alpha_true.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
    if norm == T::zero() {
        return Err(Error::UndefinedMetric("NMSE of a zero parameter vector"));
    }
    let err: T = alpha_true
        .iter()
        .zip(alpha_hat)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<T>()
        .sqrt();
    Ok(err / norm)
}
