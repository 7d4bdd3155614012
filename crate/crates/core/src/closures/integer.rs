use num_traits::ToPrimitive;

use super::ClosureError;
use crate::exactgeom::{HPolytope, RatVector, Relation, VPolytope};
use crate::guards::Guards;
use crate::rational::int;

/// A row scaled to primitive integers: `a·x (<=|=) b`.
struct IntRow {
    coeffs: Vec<i128>,
    rhs: i128,
    equality: bool,
    /// `min_rest[k]` / `max_rest[k]`: extreme values of `Σ_{i≥k} a_i x_i` over 0-1 `x`.
    min_rest: Vec<i128>,
    max_rest: Vec<i128>,
}

impl IntRow {
    fn prefix_ok(&self, k: usize, partial: i128) -> bool {
        if partial + self.min_rest[k] > self.rhs {
            return false;
        }
        !self.equality || partial + self.max_rest[k] >= self.rhs
    }
}

/// Convex hull of the 0-1 points of `p`, found by depth-first enumeration
/// with row-bound pruning. Every 0-1 point is extreme, so no hull
/// computation is needed.
pub fn integer_hull(p: &HPolytope, guards: &Guards) -> Result<VPolytope, ClosureError> {
    let n = p.dim();
    if n > guards.max_enumeration_dim {
        return Err(ClosureError::Guard {
            what: "dimension for 0-1 enumeration",
            value: n,
            limit: guards.max_enumeration_dim,
        });
    }
    let overflow = || ClosureError::CoefficientOverflow;
    let mut rows = Vec::with_capacity(p.rows().len());
    for row in p.rows() {
        let key = row.key();
        let coeffs = key
            .coeffs
            .iter()
            .map(|c| c.to_i64().map(i128::from))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(overflow)?;
        let rhs = key.rhs.to_i64().map(i128::from).ok_or_else(overflow)?;
        let mut min_rest = vec![0i128; n + 1];
        let mut max_rest = vec![0i128; n + 1];
        for i in (0..n).rev() {
            min_rest[i] = min_rest[i + 1] + coeffs[i].min(0);
            max_rest[i] = max_rest[i + 1] + coeffs[i].max(0);
        }
        rows.push(IntRow { coeffs, rhs, equality: key.rel == Relation::Eq, min_rest, max_rest });
    }

    let mut points = Vec::new();
    let mut bits = vec![false; n];
    let mut partial = vec![0i128; rows.len()];
    search(0, &rows, &mut bits, &mut partial, &mut points);
    Ok(VPolytope::from_vertices(n, points)?)
}

fn search(
    k: usize,
    rows: &[IntRow],
    bits: &mut Vec<bool>,
    partial: &mut Vec<i128>,
    out: &mut Vec<RatVector>,
) {
    if !rows.iter().zip(partial.iter()).all(|(r, &s)| r.prefix_ok(k, s)) {
        return;
    }
    if k == bits.len() {
        out.push(bits.iter().map(|&b| int(b as i64)).collect());
        return;
    }
    bits[k] = false;
    search(k + 1, rows, bits, partial, out);
    bits[k] = true;
    for (s, r) in partial.iter_mut().zip(rows) {
        *s += r.coeffs[k];
    }
    search(k + 1, rows, bits, partial, out);
    for (s, r) in partial.iter_mut().zip(rows) {
        *s -= r.coeffs[k];
    }
    bits[k] = false;
}
