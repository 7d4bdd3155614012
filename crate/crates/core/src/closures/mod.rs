//! Split, t-branch and lattice disjunctions, restricted closures, and rank
//! brackets.

mod apply;
mod balas;
mod closure;
mod disjunction;
mod family;
mod integer;
mod rounding;

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::exactgeom::GeomError;
use crate::parity::ParityError;

pub use apply::{apply_lattice, apply_tbranch};
pub use balas::{balas_group, balas_sequence};
pub use closure::{closure_round, closure_round_over, disjunction_hull, rank_upper_bound, RankReport};
pub use disjunction::{Disjunction, LatticeDisjunction, SplitDisjunction, TBranchDisjunction};
pub use family::{directions, enumerate_family, FamilySpec, Mode};
pub use integer::integer_hull;
pub use rounding::{rounding_witness, RoundingWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("{what} {value} exceeds the limit {limit}")]
    Guard { what: &'static str, value: usize, limit: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("disjunction direction is zero")]
    ZeroDirection,
    #[error("direction {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("disjunction has no terms")]
    NoTerms,
    #[error("disjunction terms have different dimensions")]
    MixedDimensions,
    #[error("point has {support} fractional coordinates, fewer than t = {t}")]
    TooFewFractional { support: usize, t: usize },
    #[error("row coefficients do not fit in 64 bits")]
    CoefficientOverflow,
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Parity(#[from] ParityError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
