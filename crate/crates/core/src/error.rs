//! Crate error type.

use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector argument had the wrong length for the space or function.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Norm exponent outside the supported open interval (1, ∞).
    #[error("invalid norm exponent p = {0}; need 1 < p < inf")]
    InvalidExponent(f64),

    /// Name not present in the function catalog.
    #[error("unknown catalog function `{0}`")]
    UnknownFunction(String),

    /// The regularized objective was detected to be unbounded below.
    #[error("objective unbounded below at lambda = {lambda}")]
    Unbounded { lambda: f64 },

    /// Guard for certification: λ must exceed the threshold estimate.
    #[error("lambda = {lambda} does not exceed the prox-boundedness threshold estimate {threshold}")]
    LambdaBelowThreshold { lambda: f64, threshold: f64 },

    /// A probe or search ended without a usable verdict.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A value that must be finite was `+inf`.
    #[error("value must be finite at the queried point")]
    InfiniteValue,

    /// Operation defined only for functions flagged convex.
    #[error("operation requires a convex function; `{0}` is not flagged convex")]
    NonConvex(String),

    /// Graph sample or test grid contained no usable points.
    #[error("empty sample or test grid")]
    EmptySample,

    /// A documented precondition failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Certified search could not reach the requested gap.
    #[error("tolerance {tol:e} not reached: certified gap {gap:e}")]
    TolNotReached { tol: f64, gap: f64 },

    /// Bad scenario configuration or CLI arguments.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Underlying I/O failure while writing reports.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
