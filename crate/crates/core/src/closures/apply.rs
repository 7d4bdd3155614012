use itertools::Itertools;
use num_bigint::BigInt;

use super::disjunction::{row_of, LatticeDisjunction, TBranchDisjunction};
use super::ClosureError;
use crate::exactgeom::{
    dd_convert_h_to_v, hull_of_union, HPolytope, LinearRow, RatVector, VPolytope,
};
use crate::guards::Guards;
use crate::rational::{ceil_to_int, floor_to_int, Rational};

fn check_dim(p: &HPolytope, found: usize) -> Result<(), ClosureError> {
    if p.dim() == found {
        Ok(())
    } else {
        Err(ClosureError::DimensionMismatch { expected: p.dim(), found })
    }
}

/// `conv ⋂_j ({x ∈ P : π^j x ≤ δ_j} ∪ {x ∈ P : π^j x ≥ δ_j + 1})`, computed
/// as the hull of the `2^t` sign-pattern cells.
pub fn apply_tbranch(
    p: &HPolytope,
    d: &TBranchDisjunction,
    guards: &Guards,
) -> Result<VPolytope, ClosureError> {
    check_dim(p, d.dim())?;
    let t = d.t();
    if t > guards.max_t {
        return Err(ClosureError::Guard { what: "t", value: t, limit: guards.max_t });
    }
    let mut cells = Vec::new();
    for mask in 0u64..(1u64 << t) {
        let sides = d.terms().iter().enumerate().map(|(j, s)| s.side(mask >> j & 1 == 1));
        let cell = dd_convert_h_to_v(&p.with_rows(sides)?)?;
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    Ok(hull_of_union(p.dim(), &cells)?)
}

/// Integer values `⌈min⌉..=⌊max⌋` that `π` takes on the vertex set.
pub(crate) fn integer_levels(pi: &[i64], vertices: &[RatVector]) -> Vec<BigInt> {
    let row = row_of(pi);
    let values: Vec<Rational> = vertices.iter().map(|v| row.dot(v)).collect();
    let (Some(lo), Some(hi)) = (values.iter().min(), values.iter().max()) else {
        return Vec::new();
    };
    let (lo, hi) = (ceil_to_int(lo), floor_to_int(hi));
    let mut levels = Vec::new();
    let mut k = lo;
    while k <= hi {
        levels.push(k.clone());
        k += 1;
    }
    levels
}

/// `conv {x ∈ P : π^j x ∈ ℤ for all j}`: the hull of the slices of `P` at
/// every combination of attainable integer levels.
pub fn apply_lattice(
    p: &HPolytope,
    d: &LatticeDisjunction,
    guards: &Guards,
) -> Result<VPolytope, ClosureError> {
    check_dim(p, d.dim())?;
    let vertices = dd_convert_h_to_v(p)?;
    if vertices.is_empty() {
        return Ok(vertices);
    }
    let levels: Vec<Vec<BigInt>> =
        d.pis().iter().map(|pi| integer_levels(pi, vertices.vertices())).collect();
    let combos = levels
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
        .unwrap_or(usize::MAX);
    if combos > guards.max_level_combinations {
        return Err(ClosureError::Guard {
            what: "level combinations",
            value: combos,
            limit: guards.max_level_combinations,
        });
    }
    let mut cells = Vec::new();
    if combos > 0 {
        for choice in levels.iter().map(|l| l.iter()).multi_cartesian_product() {
            let slices = d
                .pis()
                .iter()
                .zip(choice)
                .map(|(pi, k)| LinearRow::eq(row_of(pi), Rational::from_integer(k.clone())));
            let cell = dd_convert_h_to_v(&p.with_rows(slices)?)?;
            if !cell.is_empty() {
                cells.push(cell);
            }
        }
    }
    Ok(hull_of_union(p.dim(), &cells)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closures::SplitDisjunction;
    use crate::constructions::cropped_cube;
    use crate::rational::{half, rat};

    fn pt(v: &[(i64, i64)]) -> RatVector {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn unit_split_keeps_the_square() {
        let sq = HPolytope::unit_cube(2);
        let d = TBranchDisjunction::new(vec![SplitDisjunction::unit(2, 0)]).unwrap();
        let v = apply_tbranch(&sq, &d, &Guards::default()).unwrap();
        assert_eq!(v, dd_convert_h_to_v(&sq).unwrap());
    }

    #[test]
    fn unit_split_on_cropped_square() {
        let p = cropped_cube(2).unwrap();
        let d = TBranchDisjunction::new(vec![SplitDisjunction::unit(2, 0)]).unwrap();
        let v = apply_tbranch(&p, &d, &Guards::default()).unwrap();
        assert_eq!(v.vertices(), &[pt(&[(0, 1), (1, 2)]), pt(&[(1, 1), (1, 2)])]);
    }

    #[test]
    fn two_branch_on_cropped_square_is_empty() {
        let p = cropped_cube(2).unwrap();
        let d = TBranchDisjunction::new(vec![
            SplitDisjunction::unit(2, 0),
            SplitDisjunction::unit(2, 1),
        ])
        .unwrap();
        assert!(apply_tbranch(&p, &d, &Guards::default()).unwrap().is_empty());
    }

    #[test]
    fn lattice_on_diagonal() {
        let p = cropped_cube(2).unwrap();
        let d = LatticeDisjunction::new(vec![vec![1, 1]]).unwrap();
        let v = apply_lattice(&p, &d, &Guards::default()).unwrap();
        assert_eq!(v.vertices(), &[pt(&[(1, 4), (3, 4)]), pt(&[(3, 4), (1, 4)])]);
    }

    #[test]
    fn lattice_on_both_axes_is_empty() {
        let p = cropped_cube(2).unwrap();
        let d = LatticeDisjunction::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(apply_lattice(&p, &d, &Guards::default()).unwrap().is_empty());
    }

    #[test]
    fn lattice_guard() {
        let p = cropped_cube(2).unwrap();
        let d = LatticeDisjunction::new(vec![vec![1, 1]]).unwrap();
        let guards = Guards { max_level_combinations: 0, ..Guards::default() };
        assert!(matches!(apply_lattice(&p, &d, &guards), Err(ClosureError::Guard { .. })));
    }

    #[test]
    fn integer_levels_of_half() {
        let v = vec![RatVector::new(vec![half()])];
        assert!(integer_levels(&[1], &v).is_empty());
    }
}
