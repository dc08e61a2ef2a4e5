//! Finite groups of rational matrices: closure, subgroups, homomorphisms,
//! quotients, commutants and invariant subspaces.

mod group;
mod hom;
mod invariant;
mod quotient;

pub use group::{commutant_of, FiniteMatrixGroup, Subgroup, DEFAULT_ORDER_BOUND};
pub use hom::{kernel_of, GroupHom};
pub use invariant::{
    decompose, find_invariant_subspace, find_invariant_subspace_seeded, index2_subgroups, positive_inertia,
    restrict_to, InvariantLeaf, InvariantOutcome, InvariantSearch, DEFAULT_SEARCH_SEED,
};
pub use quotient::{quotient, QuotientGroup};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    GeneratorShape { index: usize, dim: usize, rows: usize, cols: usize },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("closure exceeded the order bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("element list is not closed under multiplication")]
    NotClosed,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a homomorphism: f(a*b) != f(a)*f(b) for elements a={a}, b={b}")]
    NotHomomorphism { a: usize, b: usize },
    #[error("image of generator {generator} is not an element of the target group")]
    ImageNotInTarget { generator: usize },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("not normal: conjugating element {x} by {g} leaves the subgroup")]
    NotNormal { g: usize, x: usize },
}
