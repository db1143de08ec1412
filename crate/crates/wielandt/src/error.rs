//! Error kinds shared across the crate.
//!
//! Numeric routines fail loudly: anything that would silently degrade a
//! result (a non-Hermitian Gram matrix, a failed pivot, a zero vector where
//! a direction is required) is reported as a typed error instead.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix handed in as Hermitian deviates from its adjoint by more
    /// than the construction tolerance.
    #[error("matrix is not Hermitian: max |H - H*| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A Cholesky pivot collapsed; the matrix is not positive definite.
    #[error("matrix is not positive definite: pivot {pivot:.3e} at index {index}")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    /// The Jacobi eigensolver did not reach the off-diagonal target.
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    EigFailure { sweeps: usize, off: f64 },

    /// A direction was required but the vector is zero.
    #[error("zero vector where a direction is required")]
    ZeroVector,

    /// Two vectors expected to span a plane are (numerically) parallel.
    #[error("vectors are linearly dependent")]
    DependentVectors,

    /// The two extreme pencil eigenvalues coincide, so no nontrivial
    /// extremal construction exists.
    #[error("degenerate pencil: the extreme eigenvalues coincide")]
    DegeneratePencil,

    /// A scalar argument lies outside its documented domain.
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// Malformed input text (file or command-line value).
    #[error("parse error: {0}")]
    Parse(String),

    /// NaN or infinity reached a public constructor.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}
