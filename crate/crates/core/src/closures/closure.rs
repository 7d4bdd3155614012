use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;

use super::apply::{apply_lattice, apply_tbranch};
use super::disjunction::{row_of, Disjunction};
use super::family::{family_for_vertices, FamilySpec};
use super::integer::integer_hull;
use super::ClosureError;
use crate::exactgeom::{
    dd_convert_h_to_v, facets_of_points, irredundant, HPolytope, LinearRow, RatVector, VPolytope,
};
use crate::guards::Guards;
use crate::rational::is_integral;

/// Hull of one disjunction applied to `p`.
pub fn disjunction_hull(
    p: &HPolytope,
    d: &Disjunction,
    guards: &Guards,
) -> Result<VPolytope, ClosureError> {
    match d {
        Disjunction::TBranch(d) => apply_tbranch(p, d, guards),
        Disjunction::Lattice(d) => apply_lattice(p, d, guards),
    }
}

/// True when every vertex of `p` already lies in a cell of `d`, so the
/// disjunction hull is `p` itself.
fn leaves_unchanged(vertices: &[RatVector], d: &Disjunction) -> bool {
    match d {
        Disjunction::TBranch(d) => vertices.iter().all(|v| {
            d.terms()
                .iter()
                .all(|s| s.side(false).is_satisfied_by(v) || s.side(true).is_satisfied_by(v))
        }),
        Disjunction::Lattice(d) => vertices
            .iter()
            .all(|v| d.pis().iter().all(|pi| is_integral(&row_of(pi).dot(v)))),
    }
}

/// Intersection of the hulls of the given disjunctions, with `p`'s own rows.
///
/// Hulls may be computed in any order and in parallel; their facets are
/// sorted canonically before the intersection, so the result does not depend
/// on the order of `disjunctions`.
pub fn closure_round_over(
    p: &HPolytope,
    disjunctions: &[Disjunction],
    guards: &Guards,
) -> Result<HPolytope, ClosureError> {
    let dim = p.dim();
    let vertices = dd_convert_h_to_v(p)?;
    if vertices.is_empty() {
        return Ok(HPolytope::empty(dim));
    }
    let results: Vec<Option<Vec<LinearRow>>> = disjunctions
        .par_iter()
        .filter(|d| !leaves_unchanged(vertices.vertices(), d))
        .map(|d| {
            let hull = disjunction_hull(p, d, guards)?;
            if hull.is_empty() {
                return Ok(None);
            }
            Ok(Some(facets_of_points(dim, hull.vertices())?))
        })
        .collect::<Result<_, ClosureError>>()?;
    debug!("{} of {} disjunctions cut", results.len(), disjunctions.len());
    let mut cuts = Vec::new();
    for rows in results {
        match rows {
            None => return Ok(HPolytope::empty(dim)),
            Some(rows) => cuts.extend(rows),
        }
    }
    if cuts.is_empty() {
        return Ok(p.clone());
    }
    cuts.sort_by_cached_key(LinearRow::key);
    cuts.dedup_by_key(|r| r.key());
    let mut rows = p.rows().to_vec();
    rows.extend(cuts);
    Ok(irredundant(dim, rows)?)
}

/// One round of the closure restricted to the family `spec` induces on `p`.
pub fn closure_round(
    p: &HPolytope,
    spec: &FamilySpec,
    guards: &Guards,
) -> Result<HPolytope, ClosureError> {
    let vertices = dd_convert_h_to_v(p)?;
    let family = family_for_vertices(p.dim(), vertices.vertices(), spec, guards)?;
    debug!("family of {} disjunctions", family.len());
    closure_round_over(p, &family, guards)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    /// Rounds after which the integer hull was reached, if it was.
    pub upper: Option<usize>,
    /// Vertex counts of `P`, then of every round's result.
    pub vertex_counts: Vec<usize>,
    /// True when a round changed nothing before the integer hull was reached.
    pub stalled: bool,
    /// The last polytope computed.
    #[serde(skip)]
    pub last: HPolytope,
}

/// Iterates [`closure_round`] until the vertex set equals that of the
/// integer hull. A restricted family contains the true closure, so the count
/// bounds the true rank from above.
pub fn rank_upper_bound(
    p: &HPolytope,
    spec: &FamilySpec,
    max_rounds: usize,
    guards: &Guards,
) -> Result<RankReport, ClosureError> {
    let target = integer_hull(p, guards)?;
    let mut current = p.clone();
    let mut vertices = dd_convert_h_to_v(&current)?;
    let mut report = RankReport {
        upper: None,
        vertex_counts: vec![vertices.len()],
        stalled: false,
        last: current.clone(),
    };
    for round in 0..=max_rounds {
        if vertices == target {
            report.upper = Some(round);
            break;
        }
        if round == max_rounds {
            break;
        }
        let next = closure_round(&current, spec, guards)?;
        let next_vertices = dd_convert_h_to_v(&next)?;
        info!("round {}: {} vertices", round + 1, next_vertices.len());
        report.vertex_counts.push(next_vertices.len());
        if next_vertices == vertices {
            report.stalled = true;
            break;
        }
        current = next;
        vertices = next_vertices;
    }
    report.last = current;
    Ok(report)
}
