//! Compact 1-orbifolds, assembly of one-dimensional preimages from chart
//! pieces, boundary parity, and the no-retraction machinery.

mod assemble;
mod classify;
mod retraction;

pub use assemble::{assemble_components, Assembly, AssembledComponent, GlueVia, Gluing, Piece, PieceKind, Port};
pub use classify::{
    boundary_parity, classify_1_orbifold, End, OneOrbifoldComponent, OneOrbifoldType, ParityReport,
};
pub use retraction::{
    forbidden_index2_check, no_retraction_hypothesis, retraction_contradiction, ChartEvidence, ContradictionReport,
    HypothesisReport, Index2Report, MirrorCheck, RetractionOutcome, RetractionReport, RetractionScenario,
};

use thiserror::Error;

use crate::charts::{ChartEmbedding, ChartError, LocalChart};
use crate::germs::GermError;

/// Charts with the embeddings declared between them.
#[derive(Clone, Debug, Default)]
pub struct Atlas {
    pub charts: Vec<NamedChart>,
    pub embeddings: Vec<NamedEmbedding>,
}

#[derive(Clone, Debug)]
pub struct NamedChart {
    pub name: String,
    pub chart: LocalChart,
}

#[derive(Clone, Debug)]
pub struct NamedEmbedding {
    pub source: usize,
    pub target: usize,
    pub embedding: ChartEmbedding,
}

impl Atlas {
    pub fn chart(&self, i: usize) -> &LocalChart {
        &self.charts[i].chart
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.charts.iter().position(|c| c.name == name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OneDimError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error("piece {piece}: preimage has dimension {dim}, expected 1")]
    PieceNotOneDim { piece: usize, dim: usize },
    #[error("piece {piece}: intrinsic isotropy of order {order} cannot act effectively on a line")]
    UnexpectedIsotropy { piece: usize, order: usize },
    #[error("piece {piece} has no port {port}")]
    UnknownPort { piece: usize, port: String },
    #[error("port {port} of piece {piece} is glued more than once")]
    PortReused { piece: usize, port: String },
    #[error("port {port} of piece {piece} is not glued; the preimage would not be compact")]
    OpenPort { piece: usize, port: String },
    #[error("gluing {gluing}: {reason}")]
    BadGluing { gluing: usize, reason: String },
    #[error("gluing {gluing}: isotropy orders {orders:?} do not match")]
    MismatchedIsotropy { gluing: usize, orders: Vec<usize> },
    #[error("component {index} has type ({kind}); the parity count needs only types (a) and (b)")]
    MirrorComponent { index: usize, kind: char },
    #[error("germ on chart {chart} does not restrict to the identity on the boundary")]
    NotBoundaryFixing { chart: String },
    #[error("no boundary chart carries a candidate germ")]
    NoBoundaryGerm,
    #[error("malformed scenario: {0}")]
    Malformed(String),
}
