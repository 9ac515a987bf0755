//! Discrete slow-time signal primitives: the transmit code, Doppler steering
//! vectors and the sensing matrix of the stacked NLoS paths.
//!
//! The pulse-sampling interval is normalized to one pulse, so a Doppler
//! shift `nu` is a phase increment in radians per pulse and
//! `p(nu)[n] = e^{j n nu}`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Matrix};
use crate::rng;
use crate::scalar::{cis, Real};

/// Modulus tolerance for unit-modulus vectors at precision `T`.
pub(crate) fn unit_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
}

/// Unimodular slow-time code `x`, one entry per pulse.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform<T> {
    samples: Vec<Complex<T>>,
}

impl<T: Real> Waveform<T> {
    pub fn new(samples: Vec<Complex<T>>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Contract("waveform needs at least one sample".into()));
        }
        let tol = unit_tolerance::<T>();
        if let Some(n) = samples.iter().position(|s| (s.norm() - T::one()).abs() > tol) {
            return Err(Error::Contract(format!("waveform sample {n} is not unit modulus")));
        }
        Ok(Self { samples })
    }

    /// Code with the given phases (radians).
    pub fn from_phases(phases: &[T]) -> Result<Self> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("waveform phases"));
        }
        Self::new(phases.iter().map(|&p| cis(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }
}

/// Random unimodular code with phases i.i.d. uniform on `[0, 2π)`.
pub fn make_random_waveform<T: Real>(n: usize, seed: u64) -> Result<Waveform<T>> {
    if n == 0 {
        return Err(Error::Contract("waveform length N must be at least 1".into()));
    }
    let mut rng = rng::stream(seed);
    let phases: Vec<T> = (0..n).map(|_| rng::uniform_phase(&mut rng)).collect();
    Waveform::from_phases(&phases)
}

/// `p(nu) = [1, e^{j nu}, ..., e^{j (N-1) nu}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DopplerSteering<T> {
    nu: T,
    vector: Vec<Complex<T>>,
}

impl<T: Real> DopplerSteering<T> {
    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector.is_empty()
    }

    pub fn vector(&self) -> &[Complex<T>] {
        &self.vector
    }
}

pub fn doppler_steering<T: Real>(nu: T, n: usize) -> Result<DopplerSteering<T>> {
    if n == 0 {
        return Err(Error::Contract("steering length N must be at least 1".into()));
    }
    if !nu.is_finite() {
        return Err(Error::NonFinite("Doppler shift"));
    }
    let vector = (0..n)
        .map(|i| {
            if i == 0 {
                Complex::new(T::one(), T::zero())
            } else {
                cis(T::lit(i as f64) * nu)
            }
        })
        .collect();
    Ok(DopplerSteering { nu, vector })
}

/// The `N×K` matrix `A` whose column `k` is `h_k (x ⊙ p(nu_k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingMatrix<T> {
    columns: CMatrix<T>,
    per_path_doppler: Vec<T>,
    nlos_csi: Vec<Complex<T>>,
}

impl<T: Real> SensingMatrix<T> {
    pub fn matrix(&self) -> &CMatrix<T> {
        &self.columns
    }

    pub fn samples(&self) -> usize {
        self.columns.rows()
    }

    pub fn paths(&self) -> usize {
        self.columns.cols()
    }

    pub fn per_path_doppler(&self) -> &[T] {
        &self.per_path_doppler
    }

    pub fn nlos_csi(&self) -> &[Complex<T>] {
        &self.nlos_csi
    }

    /// `Aᴴ A`.
    pub fn gram(&self) -> CMatrix<T> {
        self.columns.gram()
    }

    /// `A α`.
    pub fn apply(&self, alpha: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.columns.matvec(alpha)
    }
}

fn check_paths<T: Real>(x: &Waveform<T>, dopplers: &[T], nlos_csi: &[Complex<T>]) -> Result<()> {
    let k = dopplers.len();
    if k == 0 {
        return Err(Error::Contract("at least one path is required".into()));
    }
    if nlos_csi.len() != k {
        return Err(Error::DimensionMismatch {
            what: "NLoS channel coefficients",
            expected: k,
            found: nlos_csi.len(),
        });
    }
    if k > x.len() {
        return Err(Error::Underdetermined {
            paths: k,
            samples: x.len(),
        });
    }
    if dopplers.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("Doppler shifts"));
    }
    if nlos_csi.iter().any(|h| !(h.re.is_finite() && h.im.is_finite())) {
        return Err(Error::NonFinite("NLoS channel coefficients"));
    }
    if let Some(index) = nlos_csi.iter().position(|h| h.norm_sqr() == T::zero()) {
        return Err(Error::DegeneratePath { index });
    }
    Ok(())
}

/// Assembles `A` column by column.
pub fn build_sensing_matrix<T: Real>(
    x: &Waveform<T>,
    dopplers: &[T],
    nlos_csi: &[Complex<T>],
) -> Result<SensingMatrix<T>> {
    check_paths(x, dopplers, nlos_csi)?;
    let n = x.len();
    let mut columns = Matrix::zeros(n, dopplers.len());
    for (k, (&nu, &h)) in dopplers.iter().zip(nlos_csi).enumerate() {
        let p = doppler_steering(nu, n)?;
        for (i, (&xi, &pi)) in x.samples().iter().zip(p.vector()).enumerate() {
            columns[(i, k)] = h * (xi * pi);
        }
    }
    Ok(SensingMatrix {
        columns,
        per_path_doppler: dopplers.to_vec(),
        nlos_csi: nlos_csi.to_vec(),
    })
}

/// `P(nu) = [p(nu_1), ..., p(nu_K)]`.
pub fn doppler_matrix<T: Real>(dopplers: &[T], n: usize) -> Result<CMatrix<T>> {
    let cols = dopplers
        .iter()
        .map(|&nu| doppler_steering(nu, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(n, dopplers.len(), |i, k| cols[k].vector()[i]))
}

/// `Diag(x) · P(nu) · Diag(h)` as explicit matrix products.
pub fn factored_sensing_product<T: Real>(
    x: &Waveform<T>,
    dopplers: &[T],
    nlos_csi: &[Complex<T>],
) -> Result<CMatrix<T>> {
    check_paths(x, dopplers, nlos_csi)?;
    let dx = Matrix::from_diag(x.samples());
    let p = doppler_matrix(dopplers, x.len())?;
    let dh = Matrix::from_diag(nlos_csi);
    dx.matmul(&p)?.matmul(&dh)
}
