//! IRS-aided radar target parameter estimation.
//!
//! The numerical core (`model`, `channel`, `estimator`, `phaseopt`,
//! `bounds`) is generic over the real scalar `T: Real` (`f32` or `f64`);
//! the Monte-Carlo `harness` and the `cli` run in `f64`. Aliases below name
//! the double-precision instantiations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod error;
pub mod estimator;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod output;
pub mod phaseopt;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Entry, Real};

pub use num_complex::{Complex, Complex32, Complex64};

pub type Matrix64 = linalg::Matrix<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;
pub type CMatrix32 = linalg::CMatrix<f32>;
pub type Waveform64 = model::Waveform<f64>;
pub type Waveform32 = model::Waveform<f32>;
pub type SensingMatrix64 = model::SensingMatrix<f64>;
pub type SensingMatrix32 = model::SensingMatrix<f32>;
pub type IrsPanel64 = channel::IrsPanel<f64>;
pub type IrsPanel32 = channel::IrsPanel<f32>;
pub type ChannelRealization64 = channel::ChannelRealization<f64>;
pub type NoiseModel64 = estimator::NoiseModel<f64>;
pub type NoiseModel32 = estimator::NoiseModel<f32>;
pub type EstimationReport64 = estimator::EstimationReport<f64>;
pub type CrbReport64 = bounds::CrbReport<f64>;
pub type PhasePolicy64 = phaseopt::PhasePolicy<f64>;
