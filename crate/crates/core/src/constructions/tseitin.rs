use super::{ConstructionError, Graph, HalfIntegralPoint, HalfValue};
use crate::exactgeom::{HPolytope, LinearRow, RatVector};
use crate::rational::int;

/// Largest vertex degree for which the `2^(deg-1)` rows of a vertex are materialized.
pub const MAX_TSEITIN_DEGREE: usize = 20;

/// The Tseitin polytope: for every vertex `u` and even `F ⊆ N(u)`,
/// `Σ_{v∉F} x_uv + Σ_{v∈F} (1 − x_uv) ≥ 1`, followed by the box rows.
pub fn tseitin_polytope(graph: &Graph) -> Result<HPolytope, ConstructionError> {
    let m = graph.edge_count();
    if m == 0 {
        return Err(ConstructionError::NoEdges);
    }
    let mut rows = Vec::new();
    for u in 0..graph.n() {
        let incident = graph.incident_edges(u);
        let deg = incident.len();
        if deg == 0 {
            return Err(ConstructionError::IsolatedVertex { vertex: u });
        }
        if deg > MAX_TSEITIN_DEGREE {
            return Err(ConstructionError::TooLarge {
                what: "vertex degree",
                value: deg,
                limit: MAX_TSEITIN_DEGREE,
            });
        }
        let mut vertex_rows = Vec::with_capacity(1 << (deg - 1));
        // Gray-code walk over subsets of the neighborhood; keep the even ones.
        for i in 0u64..(1u64 << deg) {
            let f = i ^ (i >> 1);
            if f.count_ones() % 2 != 0 {
                continue;
            }
            let mut coeffs = vec![int(0); m];
            for (k, &e) in incident.iter().enumerate() {
                coeffs[e] = int(if f >> k & 1 == 1 { -1 } else { 1 });
            }
            let rhs = int(1 - f.count_ones() as i64);
            vertex_rows.push(LinearRow::ge(RatVector::new(coeffs), rhs));
        }
        vertex_rows.sort_by_cached_key(LinearRow::key);
        rows.extend(vertex_rows);
    }
    rows.extend(HPolytope::unit_cube(m).into_rows());
    Ok(HPolytope::new(m, rows)?)
}

/// Membership of a half-integral point in the Tseitin polytope: each vertex
/// touching a 1/2-edge touches at least two, and each other vertex has an odd
/// number of 1-edges.
pub fn tseitin_membership(graph: &Graph, x: &HalfIntegralPoint) -> Result<bool, ConstructionError> {
    if x.len() != graph.edge_count() {
        return Err(ConstructionError::LengthMismatch {
            expected: graph.edge_count(),
            found: x.len(),
        });
    }
    Ok((0..graph.n()).all(|v| {
        let (mut halves, mut ones) = (0, 0);
        for &e in graph.incident_edges(v) {
            match x.get(e) {
                HalfValue::Half => halves += 1,
                HalfValue::One => ones += 1,
                HalfValue::Zero => {}
            }
        }
        if halves > 0 {
            halves >= 2
        } else {
            ones % 2 == 1
        }
    }))
}
