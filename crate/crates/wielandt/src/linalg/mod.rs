//! Self-contained dense complex linear algebra sized for the rest of the
//! crate: vectors, Hermitian matrices, Cholesky factors, and a Jacobi
//! eigensolver. Everything is plain `f64`/`Complex<f64>` with row-major
//! storage; no external solver is involved.

mod eig;
mod matrix;
mod vector;

pub use eig::{HermEigen, EIG_MAX_SWEEPS, EIG_OFF_TOL};
pub use matrix::{inner, norm, try_unit, Cholesky, HermMatrix, Matrix, CHOLESKY_PIVOT_TOL, HERM_TOL};
pub use vector::{Complex64, Vector};
