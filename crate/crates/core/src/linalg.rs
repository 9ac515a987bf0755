//! Small dense matrices and a Cholesky factorization for Hermitian
//! (or real symmetric) positive-definite systems.
//!
//! Storage is row-major. Sizes in this crate are tiny (K ≤ N ≈ 50), so the
//! kernels are plain triple loops.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Entry, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type CMatrix<T> = Matrix<Complex<T>>;

impl<S: Entry> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row-major data; the length must be `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix data",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_diag(diag: &[S]) -> Self {
        Self::from_fn(diag.len(), diag.len(), |i, j| if i == j { diag[i] } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> S {
        self.diagonal().into_iter().sum()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map<U: Entry>(&self, f: impl Fn(S) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: S) -> Self {
        self.map(|v| v * s)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                what: "matrix product inner dimension",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[S]) -> Result<Vec<S>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                what: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// `selfᴴ · v`.
    pub fn adjoint_matvec(&self, v: &[S]) -> Result<Vec<S>> {
        if self.rows != v.len() {
            return Err(Error::DimensionMismatch {
                what: "adjoint matrix-vector product",
                expected: self.rows,
                found: v.len(),
            });
        }
        Ok((0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].conj() * v[i]).sum())
            .collect())
    }

    /// `selfᴴ · self`.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let v: S = (0..self.rows).map(|r| self[(r, i)].conj() * self[(r, j)]).sum();
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> S::Real {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a - b).modulus())
            .fold(S::Real::zero(), S::Real::max)
    }

    /// Largest entrywise modulus of `self - selfᴴ`.
    pub fn hermitian_defect(&self) -> S::Real {
        if !self.is_square() {
            return S::Real::infinity();
        }
        self.max_abs_diff(&self.conj_transpose())
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> S::Real {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].modulus()).sum::<S::Real>())
            .fold(S::Real::zero(), S::Real::max)
    }

    pub fn max_abs(&self) -> S::Real {
        self.data
            .iter()
            .map(|v| v.modulus())
            .fold(S::Real::zero(), S::Real::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl<T: Real> CMatrix<T> {
    pub fn real_part(&self) -> Matrix<T> {
        self.map(|v| v.re)
    }

    pub fn imag_part(&self) -> Matrix<T> {
        self.map(|v| v.im)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kronecker<S: Entry>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    })
}

/// Lower-triangular factor `L` with `A = L Lᴴ` and a real positive diagonal.
#[derive(Debug, Clone)]
pub struct Cholesky<S> {
    l: Matrix<S>,
}

impl<S: Entry> Cholesky<S> {
    /// Factors a Hermitian positive-definite matrix. Only the lower triangle
    /// is read.
    pub fn new(a: &Matrix<S>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                what: "Cholesky input columns",
                expected: a.rows(),
                found: a.cols(),
            });
        }
        if !a.all_finite() {
            return Err(Error::NonFinite("Cholesky input"));
        }
        let n = a.rows();
        let mut l: Matrix<S> = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)].re();
            for k in 0..j {
                d -= l[(j, k)].abs_sq();
            }
            if !(d > S::Real::zero()) {
                return Err(Error::NotPositiveDefinite { pivot: j });
            }
            let ljj = d.sqrt();
            l[(j, j)] = S::from_real(ljj);
            let inv = S::from_real(ljj.recip());
            for i in j + 1..n {
                let mut v = a[(i, j)];
                for k in 0..j {
                    v -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = v * inv;
            }
        }
        Ok(Self { l })
    }

    pub fn factor(&self) -> &Matrix<S> {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    /// Solves `L z = b`.
    pub fn forward(&self, b: &[S]) -> Vec<S> {
        let n = self.dim();
        assert_eq!(b.len(), n, "forward substitution length");
        let mut z = b.to_vec();
        for i in 0..n {
            let mut v = z[i];
            for (k, zk) in z.iter().enumerate().take(i) {
                v -= self.l[(i, k)] * *zk;
            }
            z[i] = v * S::from_real(self.l[(i, i)].re().recip());
        }
        z
    }

    /// Solves `Lᴴ x = z`.
    pub fn backward(&self, z: &[S]) -> Vec<S> {
        let n = self.dim();
        assert_eq!(z.len(), n, "backward substitution length");
        let mut x = z.to_vec();
        for i in (0..n).rev() {
            let mut v = x[i];
            for (k, xk) in x.iter().enumerate().skip(i + 1) {
                v -= self.l[(k, i)].conj() * *xk;
            }
            x[i] = v * S::from_real(self.l[(i, i)].re().recip());
        }
        x
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        if b.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "right-hand side",
                expected: self.dim(),
                found: b.len(),
            });
        }
        Ok(self.backward(&self.forward(b)))
    }

    /// `L⁻¹ B`, column by column.
    pub fn forward_matrix(&self, b: &Matrix<S>) -> Result<Matrix<S>> {
        if b.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "whitened matrix rows",
                expected: self.dim(),
                found: b.rows(),
            });
        }
        let mut out = Matrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            for (i, v) in self.forward(&b.column(j)).into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }

    /// `A⁻¹`, assembled from unit-vector solves.
    pub fn inverse(&self) -> Matrix<S> {
        let n = self.dim();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![S::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = S::zero());
            e[j] = S::one();
            let col = self.backward(&self.forward(&e));
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        // exact Hermitian symmetry
        for i in 0..n {
            inv[(i, i)] = S::from_real(inv[(i, i)].re());
            for j in 0..i {
                let v = (inv[(i, j)] + inv[(j, i)].conj()) * S::from_real(S::Real::lit(0.5));
                inv[(i, j)] = v;
                inv[(j, i)] = v.conj();
            }
        }
        inv
    }
}

/// Factors `a`, inverts it and rejects it when the 1-norm condition number
/// `‖a‖₁‖a⁻¹‖₁` exceeds `limit`. Returns the factor, inverse and condition.
pub fn guarded_inverse<S: Entry>(a: &Matrix<S>, limit: f64) -> Result<(Cholesky<S>, Matrix<S>, f64)> {
    let chol = Cholesky::new(a).map_err(|e| match e {
        Error::NotPositiveDefinite { .. } => Error::SingularModel {
            condition: f64::INFINITY,
            limit,
        },
        other => other,
    })?;
    let inv = chol.inverse();
    let condition = (a.norm_one() * inv.norm_one()).as_f64();
    if !condition.is_finite() || condition > limit {
        return Err(Error::SingularModel { condition, limit });
    }
    Ok((chol, inv, condition))
}
