//! Scalar abstraction shared by the numerical modules.
//!
//! Everything below the harness is written against [`Real`], which is
//! implemented for `f32` and `f64`. Complex entries are
//! `num_complex::Complex<T>`. Dense matrices hold any [`Entry`], so the same
//! factorization code serves Hermitian complex Gram matrices and the real
//! symmetric Fisher information.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal or sample.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Real")
    }

    /// Widening conversion used for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Element of a dense matrix: a real scalar or a complex number over one.
pub trait Entry:
    Copy + PartialEq + NumAssign + std::ops::Neg<Output = Self> + Sum + Debug + Send + Sync + 'static
{
    type Real: Real;

    fn conj(self) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn abs_sq(self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;

    fn modulus(self) -> Self::Real {
        self.abs_sq().sqrt()
    }

    fn is_finite(self) -> bool {
        Float::is_finite(self.re()) && Float::is_finite(self.im())
    }
}

impl<T: Real> Entry for T {
    type Real = T;

    fn conj(self) -> Self {
        self
    }
    fn re(self) -> T {
        self
    }
    fn im(self) -> T {
        T::zero()
    }
    fn abs_sq(self) -> T {
        self * self
    }
    fn from_real(r: T) -> Self {
        r
    }
}

impl<T: Real> Entry for Complex<T> {
    type Real = T;

    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn re(self) -> T {
        self.re
    }
    fn im(self) -> T {
        self.im
    }
    fn abs_sq(self) -> T {
        self.norm_sqr()
    }
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
}

/// `e^{j·phase}`.
pub fn cis<T: Real>(phase: T) -> Complex<T> {
    Complex::new(phase.cos(), phase.sin())
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_phase<T: Real>(phase: T) -> T {
    let two_pi = T::TAU();
    let mut p = phase % two_pi;
    if p < T::zero() {
        p += two_pi;
    }
    // `-tiny % 2π + 2π` can round up to exactly 2π
    if p >= two_pi {
        p = T::zero();
    }
    p
}
