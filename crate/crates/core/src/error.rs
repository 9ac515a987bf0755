use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the estimation pipeline and its front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's contract (sizes, ranges, lengths).
    #[error("invalid input: {0}")]
    Contract(String),

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("model underdetermined: {paths} paths but only {samples} slow-time samples")]
    Underdetermined { paths: usize, samples: usize },

    #[error("path {index} has a zero channel coefficient")]
    DegeneratePath { index: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },

    #[error("singular model: Gram matrix condition number {condition:.3e} exceeds {limit:.1e}")]
    SingularModel { condition: f64, limit: f64 },

    #[error("Fisher information is singular (condition number {condition:.3e}); the bound is unbounded")]
    UnboundedBound { condition: f64 },

    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),

    #[error("degenerate draw: {0}")]
    DegenerateDraw(&'static str),

    #[error("channel generation failed after {attempts} attempts")]
    GenerationFailure { attempts: usize },

    #[error("{failed} of {total} panels exceed the grid quantization bound")]
    CertificationFailed { failed: usize, total: usize },

    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for failures that come from the numbers rather than the caller.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. }
                | Error::SingularModel { .. }
                | Error::UnboundedBound { .. }
                | Error::DegenerateDraw(_)
                | Error::GenerationFailure { .. }
                | Error::CertificationFailed { .. }
                | Error::DegeneratePath { .. }
                | Error::NonFinite(_)
                | Error::UndefinedMetric(_)
        )
    }
}
