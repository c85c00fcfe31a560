//! Exact arithmetic: arbitrary-precision rationals, Laurent polynomials in a
//! single indeterminate q, and their fraction field Q(q).
//!
//! Everything here is immutable after construction and safe to share across
//! threads. The symbolic and numeric execution modes of the higher layers both
//! go through the [`Scalar`] trait: `RationalFunction` is the symbolic field
//! Q(q), `BigRational` the numeric field Q with q fixed at a rational point.

mod laurent;
mod linalg;
mod modp;
mod ratfunc;
mod rational;
mod scalar;

pub use laurent::LaurentPoly;
pub use linalg::{
    ratfunc_matrix_solve, ratfunc_nullspace, ratfunc_rank, ratfunc_solve_by_reconstruction,
    FieldSolve, LinAlgError, Mat, SparseMat,
};
pub use modp::Fp;
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, BigRational};
pub use scalar::{q_power, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("pole at evaluation point q0 = {0}")]
    PoleAtPoint(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
}
