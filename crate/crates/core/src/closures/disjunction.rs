use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ClosureError;
use crate::exactgeom::{LinearRow, RatVector};
use crate::rational::int;

/// Integer direction with gcd 1 and positive first nonzero entry.
pub(crate) fn canonical_direction(pi: &[i64]) -> Option<Vec<i64>> {
    let g = pi.iter().fold(0i64, |g, &v| g.gcd(&v));
    if g == 0 {
        return None;
    }
    let first = *pi.iter().find(|&&v| v != 0)?;
    let sign = if first < 0 { -1 } else { 1 };
    Some(pi.iter().map(|&v| sign * v / g).collect())
}

pub(crate) fn row_of(pi: &[i64]) -> RatVector {
    pi.iter().map(|&v| int(v)).collect()
}

/// `πx ≤ δ ∨ πx ≥ δ + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSplit")]
pub struct SplitDisjunction {
    pi: Vec<i64>,
    delta: i64,
}

#[derive(Deserialize)]
struct RawSplit {
    pi: Vec<i64>,
    delta: i64,
}

impl TryFrom<RawSplit> for SplitDisjunction {
    type Error = ClosureError;

    fn try_from(raw: RawSplit) -> Result<Self, ClosureError> {
        SplitDisjunction::new(raw.pi, raw.delta)
    }
}

impl SplitDisjunction {
    /// Accepts any primitive `π`; a negative leading entry is flipped together
    /// with `δ`, which describes the same pair of half-spaces.
    pub fn new(pi: Vec<i64>, delta: i64) -> Result<Self, ClosureError> {
        let canon = canonical_direction(&pi).ok_or(ClosureError::ZeroDirection)?;
        if canon.iter().zip(&pi).any(|(c, p)| c.abs() != p.abs()) {
            return Err(ClosureError::NotPrimitive(pi));
        }
        let flipped = canon.iter().zip(&pi).any(|(c, p)| c != p);
        let delta = if flipped { -delta - 1 } else { delta };
        Ok(SplitDisjunction { pi: canon, delta })
    }

    /// `x_i ≤ 0 ∨ x_i ≥ 1`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut pi = vec![0; dim];
        pi[i] = 1;
        SplitDisjunction { pi, delta: 0 }
    }

    pub fn pi(&self) -> &[i64] {
        &self.pi
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn dim(&self) -> usize {
        self.pi.len()
    }

    /// The side `πx ≤ δ` (`upper == false`) or `πx ≥ δ + 1`.
    pub fn side(&self, upper: bool) -> LinearRow {
        if upper {
            LinearRow::ge(row_of(&self.pi), int(self.delta + 1))
        } else {
            LinearRow::le(row_of(&self.pi), int(self.delta))
        }
    }
}

impl fmt::Display for SplitDisjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}x <= {} | >= {}", self.pi, self.delta, self.delta + 1)
    }
}

/// Conjunction of splits applied before taking the hull.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TBranchDisjunction {
    terms: Vec<SplitDisjunction>,
}

impl TBranchDisjunction {
    pub fn new(mut terms: Vec<SplitDisjunction>) -> Result<Self, ClosureError> {
        let dim = terms.first().ok_or(ClosureError::NoTerms)?.dim();
        if terms.iter().any(|s| s.dim() != dim) {
            return Err(ClosureError::MixedDimensions);
        }
        terms.sort();
        terms.dedup();
        Ok(TBranchDisjunction { terms })
    }

    pub fn terms(&self) -> &[SplitDisjunction] {
        &self.terms
    }

    pub fn t(&self) -> usize {
        self.terms.len()
    }

    pub fn dim(&self) -> usize {
        self.terms[0].dim()
    }
}

/// Directions `π¹..π^t` whose values are all forced to be integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeDisjunction {
    pis: Vec<Vec<i64>>,
}

impl LatticeDisjunction {
    /// Zero directions are dropped, the rest canonicalized, sorted and deduplicated.
    pub fn new(pis: Vec<Vec<i64>>) -> Result<Self, ClosureError> {
        let dim = pis.first().ok_or(ClosureError::NoTerms)?.len();
        if pis.iter().any(|p| p.len() != dim) {
            return Err(ClosureError::MixedDimensions);
        }
        let mut pis: Vec<Vec<i64>> = pis.iter().filter_map(|p| canonical_direction(p)).collect();
        if pis.is_empty() {
            return Err(ClosureError::ZeroDirection);
        }
        pis.sort();
        pis.dedup();
        Ok(LatticeDisjunction { pis })
    }

    /// The lattice disjunction on the directions of a t-branch disjunction.
    pub fn aligned_with(d: &TBranchDisjunction) -> Self {
        LatticeDisjunction::new(d.terms().iter().map(|s| s.pi().to_vec()).collect())
            .expect("split directions are nonzero and share a dimension")
    }

    pub fn pis(&self) -> &[Vec<i64>] {
        &self.pis
    }

    pub fn t(&self) -> usize {
        self.pis.len()
    }

    pub fn dim(&self) -> usize {
        self.pis[0].len()
    }
}

/// Either kind of disjunction, as enumerated by a family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Disjunction {
    TBranch(TBranchDisjunction),
    Lattice(LatticeDisjunction),
}
