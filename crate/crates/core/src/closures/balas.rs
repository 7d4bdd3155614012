use super::disjunction::{SplitDisjunction, TBranchDisjunction};
use super::integer::integer_hull;
use super::ClosureError;
use crate::exactgeom::{
    dd_convert_h_to_v, dd_convert_v_to_h, hrep_contains, lp_optimize, HPolytope, LinearRow,
    RatVector, Sense,
};
use crate::guards::Guards;
use crate::rational::{int, Rational};

/// The unit splits on the `k`-th group of `t` consecutive coordinates
/// (`k` counted from 0); the last group may be shorter.
pub fn balas_group(dim: usize, t: usize, k: usize) -> Result<TBranchDisjunction, ClosureError> {
    let start = k * t;
    if t == 0 || start >= dim {
        return Err(ClosureError::NoTerms);
    }
    TBranchDisjunction::new((start..dim.min(start + t)).map(|i| SplitDisjunction::unit(dim, i)).collect())
}

/// Rounds of the Balas unit-split sequence until the integer hull is reached.
///
/// Round `k` applies [`balas_group`]`(k-1)`. For `P ⊆ [0,1]^n` the result
/// after `k` rounds is `conv ⋃_a (P ∩ {x_S = a})` over 0-1 assignments `a` to
/// the first `S = kt` coordinates, so the sequence has reached `P_I` exactly
/// when every vertex of every such face lies in `P_I`. This avoids building
/// the intermediate hulls.
pub fn balas_sequence(p: &HPolytope, t: usize, guards: &Guards) -> Result<usize, ClosureError> {
    let n = p.dim();
    if t == 0 || t > guards.max_t {
        return Err(ClosureError::Guard { what: "t", value: t, limit: guards.max_t });
    }
    let target = integer_hull(p, guards)?;
    if dd_convert_h_to_v(p)? == target {
        return Ok(0);
    }
    let target_h = if target.is_empty() { None } else { Some(dd_convert_v_to_h(&target)?) };
    let rounds = n.div_ceil(t);
    for k in 1..=rounds {
        let fixed = (k * t).min(n);
        if faces_inside(p, fixed, target_h.as_ref())? {
            return Ok(k);
        }
    }
    unreachable!("after fixing every coordinate the faces are 0-1 points of P")
}

fn faces_inside(
    p: &HPolytope,
    fixed: usize,
    target: Option<&HPolytope>,
) -> Result<bool, ClosureError> {
    let mut rows = Vec::with_capacity(fixed);
    visit(p, fixed, target, &mut rows)
}

fn visit(
    p: &HPolytope,
    fixed: usize,
    target: Option<&HPolytope>,
    rows: &mut Vec<LinearRow>,
) -> Result<bool, ClosureError> {
    let face = p.with_rows(rows.iter().cloned())?;
    let zero = vec![Rational::from_integer(0.into()); p.dim()];
    if lp_optimize(&face, &zero, Sense::Max)?.is_infeasible() {
        return Ok(true);
    }
    if rows.len() == fixed {
        let Some(target) = target else {
            return Ok(false);
        };
        let vertices = dd_convert_h_to_v(&face)?;
        for v in vertices.vertices() {
            if !hrep_contains(target, v)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let i = rows.len();
    for a in [0, 1] {
        rows.push(LinearRow::eq(RatVector::unit(p.dim(), i), int(a)));
        let inside = visit(p, fixed, target, rows)?;
        rows.pop();
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cropped_cube, tseitin_polytope, Graph};

    #[test]
    fn cropped_cube_pairs() {
        let g = Guards::default();
        assert_eq!(balas_sequence(&cropped_cube(4).unwrap(), 2, &g).unwrap(), 2);
        assert_eq!(balas_sequence(&cropped_cube(3).unwrap(), 1, &g).unwrap(), 3);
    }

    #[test]
    fn integral_polytope_needs_no_rounds() {
        assert_eq!(balas_sequence(&HPolytope::unit_cube(3), 1, &Guards::default()).unwrap(), 0);
    }

    #[test]
    fn triangle_empties() {
        let p = tseitin_polytope(&Graph::complete(3)).unwrap();
        let k = balas_sequence(&p, 1, &Guards::default()).unwrap();
        assert!((1..=3).contains(&k));
    }

    #[test]
    fn groups() {
        let d = balas_group(5, 2, 2).unwrap();
        assert_eq!(d.t(), 1);
        assert!(balas_group(5, 2, 3).is_err());
    }
}
