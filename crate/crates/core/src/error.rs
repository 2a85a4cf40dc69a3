//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by trace evaluation, spectral computation, and validation.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the declared domain (negative index, a > b, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Structural problem with an input value (failed invariant, bad shape).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Matrix dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Input expected to be Hermitian deviates beyond tolerance.
    #[error("matrix is not Hermitian: max |A - A*| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// Input expected to be positive semidefinite has a too-negative eigenvalue.
    #[error("matrix is not positive semidefinite: min eigenvalue {0:.3e}")]
    NotPositive(f64),

    /// The Jacobi iteration did not reach its residual target.
    #[error("eigensolver did not converge: off-diagonal residual {residual:.3e} after {sweeps} sweeps")]
    NoConvergence { residual: f64, sweeps: usize },

    /// Two algebraically equal evaluation routes disagreed beyond tolerance.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// A ratio whose denominator vanishes (or a sup over an empty set).
    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    /// A theorem hypothesis the operation checks is not satisfied.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// Unknown property-suite identifier.
    #[error("unknown suite id: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
