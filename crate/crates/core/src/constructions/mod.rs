//! Graphs, half-integral points, and the polytope families of the toolkit.

mod cropped;
mod expansion;
mod graph;
mod halfint;
mod random;
mod tseitin;

use thiserror::Error;

use crate::exactgeom::GeomError;

pub use cropped::{cropped_cube, MAX_CROPPED_DIM};
pub use expansion::{edge_expansion, ExpansionReport, MAX_EXPANSION_VERTICES};
pub use graph::Graph;
pub use halfint::{round_point, HalfIntegralPoint, HalfValue};
pub use random::{random_regular_graph, REJECTION_BUDGET};
pub use tseitin::{tseitin_membership, tseitin_polytope, MAX_TSEITIN_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("edge {edge} has an endpoint outside 0..{n}")]
    VertexOutOfRange { edge: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("parallel edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} is isolated; its Tseitin constraint would read 0 >= 1")]
    IsolatedVertex { vertex: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph needs at least 2 vertices, has {n}")]
    TooSmall { n: usize },
    #[error("{what} {value} exceeds the limit {limit}")]
    TooLarge { what: &'static str, value: usize, limit: usize },
    #[error("n*d = {n}*{d} is odd, no {d}-regular graph on {n} vertices exists")]
    OddDegreeSum { n: usize, d: usize },
    #[error("degree {d} must satisfy 1 <= d < n = {n}")]
    BadDegree { n: usize, d: usize },
    #[error("no simple pairing found in {attempts} attempts; retry with another seed")]
    RejectionBudget { attempts: usize },
    #[error("coordinate {index} is {value}, not one of 0, 1/2, 1")]
    NotHalfIntegral { index: usize, value: String },
    #[error("coordinate {index} is not fractional")]
    NotFractional { index: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}
