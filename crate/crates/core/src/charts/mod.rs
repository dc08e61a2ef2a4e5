//! Linear orbifold charts: finite groups acting on `R^n` or the half-space
//! `x_n >= 0`, isotropy, singular strata, suborbifold models and affine chart
//! embeddings.

mod chart;
mod embedding;
mod strata;
mod suborbifold;

pub use chart::{build_chart, build_chart_bounded, product_chart, LocalChart};
pub use embedding::{verify_embedding, ChartEmbedding};
pub use strata::{has_interior_codim1_stratum, stratify, Stratum, StrataReport};
pub use suborbifold::{suborbifold_model, SuborbifoldLocalModel};

use thiserror::Error;

use crate::groups::GroupError;
use crate::ratlin::{format_vec, LinalgError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("generator {index} does not fix the last coordinate, so it does not preserve the half-space")]
    BoundaryViolation { index: usize },
    #[error("a boundary chart needs dimension at least 1")]
    BoundaryDimZero,
    #[error("{what}: expected dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize, what: String },
    #[error("point {} lies outside the half-space", fmt_vec(.0))]
    OutsideHalfSpace(Vec<Rational>),
    #[error("both factors have boundary; corner models are not supported")]
    BothBoundary,
    #[error("subspace is not invariant: element {element} maps {} to {}", fmt_vec(.vector), fmt_vec(.image))]
    NotInvariant { element: usize, vector: Vec<Rational>, image: Vec<Rational> },
    #[error("intrinsic isotropy is not effective: coset {coset} acts trivially on the subspace")]
    NotEffective { coset: usize },
    #[error("embedding linear part has rank {rank}, expected {expected}")]
    EmbeddingNotInjective { rank: usize, expected: usize },
    #[error("embedding homomorphism is not injective (kernel of order {kernel_order})")]
    ThetaNotInjective { kernel_order: usize },
    #[error(
        "embedding is not equivariant for source element {element} at y = {}: {} != {}",
        fmt_vec(.point), fmt_vec(.lhs), fmt_vec(.rhs)
    )]
    NotEquivariant { element: usize, point: Vec<Rational>, lhs: Vec<Rational>, rhs: Vec<Rational> },
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", format_vec(v).join(", "))
}
