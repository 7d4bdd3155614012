use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::disjunction::{
    canonical_direction, row_of, Disjunction, LatticeDisjunction, SplitDisjunction,
    TBranchDisjunction,
};
use super::ClosureError;
use crate::exactgeom::{dd_convert_h_to_v, HPolytope, RatVector};
use crate::guards::Guards;
use crate::rational::{ceil_to_int, floor_to_int, is_integral, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Split,
    TBranch,
    Lattice,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "split" => Ok(Mode::Split),
            "tbranch" => Ok(Mode::TBranch),
            "lattice" => Ok(Mode::Lattice),
            other => Err(format!("unknown mode '{other}' (split, tbranch, lattice)")),
        }
    }
}

/// A finite family of disjunctions: every canonical integer direction with
/// `‖π‖∞ ≤ coeff_bound`, and for splits every `δ` whose strip
/// `δ < πx < δ + 1` meets the polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub mode: Mode,
    #[serde(default = "one")]
    pub t: usize,
    #[serde(default = "one")]
    pub coeff_bound: u32,
}

fn one<T: From<u8>>() -> T {
    T::from(1)
}

impl FamilySpec {
    pub fn split(coeff_bound: u32) -> Self {
        FamilySpec { mode: Mode::Split, t: 1, coeff_bound }
    }

    pub fn tbranch(t: usize, coeff_bound: u32) -> Self {
        FamilySpec { mode: Mode::TBranch, t, coeff_bound }
    }

    pub fn lattice(t: usize, coeff_bound: u32) -> Self {
        FamilySpec { mode: Mode::Lattice, t, coeff_bound }
    }

    /// Number of simultaneous terms; always 1 for plain splits.
    pub fn effective_t(&self) -> usize {
        match self.mode {
            Mode::Split => 1,
            _ => self.t,
        }
    }
}

/// All canonical directions (gcd 1, first nonzero entry positive) with
/// entries in `[-bound, bound]`, in lexicographic order.
pub fn directions(dim: usize, bound: u32, guards: &Guards) -> Result<Vec<Vec<i64>>, ClosureError> {
    let b = bound as i64;
    let side = 2 * bound as usize + 1;
    let total = u32::try_from(dim)
        .ok()
        .and_then(|d| side.checked_pow(d))
        .unwrap_or(usize::MAX);
    if bound == 0 || total / 2 > guards.max_family {
        return Err(ClosureError::Guard {
            what: "direction count",
            value: total / 2,
            limit: guards.max_family,
        });
    }
    let mut out = Vec::new();
    let mut current = vec![-b; dim];
    loop {
        if canonical_direction(&current).as_deref() == Some(&current[..]) {
            out.push(current.clone());
        }
        // odometer increment
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if current[i] < b {
                current[i] += 1;
                break;
            }
            current[i] = -b;
        }
    }
}

fn value_range(pi: &[i64], vertices: &[RatVector]) -> Option<(Rational, Rational)> {
    let row = row_of(pi);
    let values: Vec<Rational> = vertices.iter().map(|v| row.dot(v)).collect();
    Some((values.iter().min()?.clone(), values.iter().max()?.clone()))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).try_fold(1usize, |acc, i| acc.checked_mul(n - i).map(|v| v / (i + 1))).unwrap_or(usize::MAX)
}

/// Family of disjunctions for a polytope, given its vertices.
pub(crate) fn family_for_vertices(
    dim: usize,
    vertices: &[RatVector],
    spec: &FamilySpec,
    guards: &Guards,
) -> Result<Vec<Disjunction>, ClosureError> {
    let t = spec.effective_t();
    if t == 0 || t > guards.max_t {
        return Err(ClosureError::Guard { what: "t", value: t, limit: guards.max_t });
    }
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    let dirs = directions(dim, spec.coeff_bound, guards)?;
    let too_many = |value| ClosureError::Guard { what: "family size", value, limit: guards.max_family };
    match spec.mode {
        Mode::Split | Mode::TBranch => {
            let mut splits = Vec::new();
            for pi in dirs {
                let (lo, hi) = value_range(&pi, vertices).expect("vertices are nonempty");
                let (first, last) = (floor_to_int(&lo), ceil_to_int(&hi) - 1);
                let mut delta = first;
                while delta <= last {
                    let d = i64::try_from(&delta).expect("bounded polytope in a small box");
                    splits.push(SplitDisjunction::new(pi.clone(), d)?);
                    delta += 1;
                }
            }
            let k = t.min(splits.len());
            let count = binomial(splits.len(), k);
            if count > guards.max_family {
                return Err(too_many(count));
            }
            if k == 0 {
                return Ok(Vec::new());
            }
            splits
                .into_iter()
                .combinations(k)
                .map(|terms| Ok(Disjunction::TBranch(TBranchDisjunction::new(terms)?)))
                .collect()
        }
        Mode::Lattice => {
            let useful: Vec<Vec<i64>> = dirs
                .into_iter()
                .filter(|pi| {
                    let (lo, hi) = value_range(pi, vertices).expect("vertices are nonempty");
                    !(lo == hi && is_integral(&lo))
                })
                .collect();
            let k = t.min(useful.len());
            let count = binomial(useful.len(), k);
            if count > guards.max_family {
                return Err(too_many(count));
            }
            if k == 0 {
                return Ok(Vec::new());
            }
            useful
                .into_iter()
                .combinations(k)
                .map(|pis| Ok(Disjunction::Lattice(LatticeDisjunction::new(pis)?)))
                .collect()
        }
    }
}

/// The disjunctions `spec` induces on `p`, in canonical order.
///
/// Only subsets of exactly `t` terms are listed (fewer when not enough exist):
/// adding a term can only shrink the hull, so smaller subsets are dominated.
pub fn enumerate_family(
    p: &HPolytope,
    spec: &FamilySpec,
    guards: &Guards,
) -> Result<Vec<Disjunction>, ClosureError> {
    let vertices = dd_convert_h_to_v(p)?;
    family_for_vertices(p.dim(), vertices.vertices(), spec, guards)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cropped_cube;

    #[test]
    fn directions_in_the_plane() {
        let d = directions(2, 1, &Guards::default()).unwrap();
        assert_eq!(d, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
        assert_eq!(directions(3, 1, &Guards::default()).unwrap().len(), 13);
        assert_eq!(directions(2, 2, &Guards::default()).unwrap().len(), 8);
    }

    #[test]
    fn split_family_on_cropped_square() {
        let fam = enumerate_family(&cropped_cube(2).unwrap(), &FamilySpec::split(1), &Guards::default())
            .unwrap();
        // x2, x1: δ = 0; x1 - x2 ∈ [-1/2, 1/2]: δ = -1, 0; x1 + x2 ∈ [1/2, 3/2]: δ = 0, 1
        assert_eq!(fam.len(), 6);
    }

    #[test]
    fn lattice_family_drops_constant_directions() {
        let p = HPolytope::unit_cube(1);
        let fam = enumerate_family(&p, &FamilySpec::lattice(2, 1), &Guards::default()).unwrap();
        assert_eq!(fam.len(), 1);
    }

    #[test]
    fn integral_point_has_empty_families() {
        let p = HPolytope::unit_cube(2)
            .with_rows([crate::exactgeom::LinearRow::le(RatVector::from_ints(&[1, 1]), crate::rational::int(0))])
            .unwrap();
        for spec in [FamilySpec::split(1), FamilySpec::tbranch(2, 1), FamilySpec::lattice(2, 1)] {
            assert!(enumerate_family(&p, &spec, &Guards::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn mode_json() {
        let spec: FamilySpec = serde_json::from_str(r#"{"mode":"tbranch","t":2,"coeff_bound":1}"#).unwrap();
        assert_eq!(spec, FamilySpec::tbranch(2, 1));
    }
}
