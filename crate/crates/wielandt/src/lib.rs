//! Sharp bounds on how much the angle between two vectors (or two lines)
//! can change when one inner product on a space is traded for another.
//!
//! Given positive definite Gram matrices `G1`, `G2` on the same complex or
//! real space, the ratio `||v||_2 / ||v||_1` ranges over an interval
//! `[m, M]`. This crate computes that interval, the induced sharp bounds
//!
//! ```text
//! (m/M) tan(phi/2) <= tan(psi/2) <= (M/m) tan(phi/2)
//! ```
//!
//! between the angles `phi` (under `G1`) and `psi` (under `G2`) of any
//! vector pair, the analogous bounds for angles between lines, and a
//! family of derived cosine and inner-product bounds. It classifies when
//! the bounds are attained, constructs attaining pairs explicitly, and
//! ships a randomized oracle that verifies every claim numerically.
//!
//! Entry points:
//! * [`spectrum::analyze`] reduces a Gram pair to its norm-ratio data;
//! * [`angles::full_report`] measures vector and line angles under both
//!   inner products;
//! * [`bounds`] evaluates every bound against a concrete pair;
//! * [`extremal`] classifies and constructs equality cases;
//! * [`oracle::run_suite`] cross-checks all invariants with seeded
//!   random sampling;
//! * [`cli`] backs the `wielandt` binary (`analyze`, `bounds`,
//!   `extremal`, `verify`).
//!
//! Runnable walkthroughs live in `examples/`; try
//! `cargo run --example analyze`.

#![forbid(unsafe_code)]
// `!(x > 0.0)` is used throughout to reject NaN along with the sign: a
// comparison rewritten through `partial_cmp` would stop doing that.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angles;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod input;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
