//! Exact rational linear algebra and polynomial arithmetic.
//!
//! Everything here is exact; floating point appears only in the `*_f64`
//! shadow evaluators used for sampling and sanity cross-checks.

mod factor;
mod matrix;
mod mpoly;
mod rational;
mod subspace;
mod upoly;

pub use factor::{factor, squarefree_decomposition};
pub use matrix::Matrix;
pub use mpoly::{MultiPoly, Poly};
pub use rational::{
    format_rational, parse_rational, rat, rat_vec, ratio, snap_f64, to_f64, unit_vec, zero_vec,
    Rational,
};
pub use subspace::Subspace;
pub use upoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("{what}: expected length {expected}, got {got}")]
    Arity { expected: usize, got: usize, what: String },
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}
