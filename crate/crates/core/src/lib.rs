//! Exact local calculus for smooth orbifolds.
//!
//! Orbifold charts are modeled by finite groups of rational matrices acting
//! linearly on `R^n` (or the half-space `x_n >= 0`). On top of that the crate
//! provides equivariant polynomial map germs, exact regular-value tests,
//! the local structure of preimage suborbifolds, the invariant projection
//! built from the kernel of the germ's group homomorphism, obstruction
//! certificates, and the one-dimensional classification used by the
//! no-retraction and boundary-parity arguments.

pub mod charts;
pub mod corpus;
pub mod germs;
pub mod groups;
pub mod onedim;
pub mod ratlin;
pub mod report;
pub mod scenario;
