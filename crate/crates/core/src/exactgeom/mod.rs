//! Exact rational polyhedral kernel: membership, LP, double description and hulls.

mod dd;
mod hull;
mod linalg;
mod lp;
mod polytope;
mod vector;

use thiserror::Error;

pub use dd::{dd_convert_h_to_v, dd_convert_v_to_h};
pub use hull::{hull_of_union, intersect};
pub use lp::{conv_membership, lp_optimize, ConvexCertificate, LpOutcome, Sense};
pub use polytope::{hrep_contains, HPolytope, LinearRow, Relation, RowKey, VPolytope};
pub use vector::RatVector;

pub(crate) use dd::facets_of_points;
pub(crate) use hull::irredundant;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polytope has no rows")]
    NoRows,
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("operation requires a nonempty polytope")]
    EmptyPolytope,
}
