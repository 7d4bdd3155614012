//! {0,1/2}-certificate trees: construction, verification and the rank lower
//! bound they carry.

mod build;
mod cropped;
mod dag;
mod verify;

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::parity::ParityError;

pub use build::build_certificate;
pub use cropped::cropped_cube_certificate;
pub use dag::{CertDAG, CertNode, ChildEdge, Color, DagBuilder, NodeKind, Reference};
pub use verify::{
    lower_bound, verify_against_reference, verify_certificate, Failure, VerifyReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("graph has {n} vertices; the construction needs an odd count")]
    EvenVertexCount { n: usize },
    #[error("the all-1/2 point is not in the polytope (some vertex has degree below 2)")]
    RootOutside,
    #[error("{what} {value} exceeds the limit {limit}")]
    Guard { what: &'static str, value: usize, limit: usize },
    #[error("blue step at node {node} has no parity solution")]
    NoParitySolution { node: usize },
    #[error("blue children of node {node} do not average to its label")]
    BlueAverage { node: usize },
    #[error("a blue child of node {node} with positive budget is outside the polytope")]
    ChildOutside { node: usize },
    #[error("certificate does not verify: node {node}: {rule}")]
    Unverified { node: usize, rule: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Parity(#[from] ParityError),
}
