//! Equivariant polynomial map germs: regular values, preimage models, the
//! averaged projection from the kernel of the group homomorphism,
//! obstruction certificates and the Sard sampler.

mod germ;
mod obstruction;
mod preimage;
mod projection;
mod replacement;
mod sard;

pub use germ::{build_germ, pull_back, recenter, MapGerm};
pub use obstruction::{equivariant_linear_maps, obstruction_certificate, ObstructionCertificate, Reason, Verdict};
pub use preimage::{
    faithfulness_check, is_regular_value, preimage_model, preimage_model_boundary, real_target_structure,
    BoundaryData, FaithfulnessReport, PreimageModel, RealTargetReport, RegularityReport,
};
pub use projection::{
    cocycle_identities, invariant_projection, projection_for, CocycleReport, InvariantProjection, ProjectionChecks,
};
pub use replacement::{lift_replacement_invariance, ReplacementReport};
pub use sard::{classify_point, sard_sample, PreimageTable, SardReport, SNAP_DENOMINATOR};

use thiserror::Error;

use crate::charts::ChartError;
use crate::groups::GroupError;
use crate::ratlin::{format_vec, LinalgError, Matrix, MultiPoly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GermError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{what}: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize, what: String },
    #[error("theta does not map the source chart group to the target chart group")]
    ThetaMismatch,
    #[error("lift is not equivariant for element {element}: residual {residual}")]
    NotEquivariant { element: usize, element_matrix: Matrix, residual: MultiPoly },
    #[error("lift value {} lies outside the target domain", fmt_vec(.0))]
    TargetOutsideHalfSpace(Vec<Rational>),
    #[error("point {} maps to {}, not to p", fmt_vec(.point), fmt_vec(.value))]
    NotInPreimage { point: Vec<Rational>, value: Vec<Rational> },
    #[error("not a regular value: differential at {} has rank {rank}, expected {expected}", fmt_vec(.point))]
    NotRegular { point: Vec<Rational>, rank: usize, expected: usize },
    #[error("point {} is not fixed by the chart group; recenter first", fmt_vec(.0))]
    NotCentered(Vec<Rational>),
    #[error("kernel of the differential is not invariant under element {element}")]
    KernelNotInvariant { element: usize },
    #[error("source chart has no boundary")]
    NoBoundary,
    #[error("restriction to the boundary is critical: rank {rank}, expected {expected}")]
    BoundaryRestrictionCritical { rank: usize, expected: usize },
    #[error("target must be one-dimensional with trivial group")]
    WrongTargetShape,
    #[error("unsupported lift: {0}")]
    UnsupportedLift(String),
    #[error("empty sampling interval [{lo}, {hi}]")]
    BadBox { lo: Rational, hi: Rational },
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", format_vec(v).join(", "))
}
