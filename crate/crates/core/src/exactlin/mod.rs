//! Exact linear algebra over ℤ and ℚ.
//!
//! Everything here works on arbitrary-precision integers; intermediate
//! entries of Smith reductions grow quickly and must never wrap.

mod matrix;
mod poly;
mod signature;
mod snf;
mod solve;

use thiserror::Error;

pub use matrix::IntMatrix;
pub use poly::{characteristic_polynomial, IntPolynomial};
pub use signature::{symmetric_signature, Inertia};
pub use snf::{smith_normal_form, SmithDecomposition};
pub use solve::{
    hermite_normal_form, minimal_order_solve, solve_integer, solve_rational, RationalSolution,
    SolveResult,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix has {rows} rows but the right-hand side has length {len}")]
    DimensionMismatch { rows: usize, len: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
