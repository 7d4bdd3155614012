use std::collections::HashSet;

use super::dd::{dd_convert_h_to_v, facets_of_points};
use super::linalg;
use super::lp::{max_over_feasible, FeasibleMax};
use super::polytope::{check_dim, HPolytope, LinearRow, Relation, VPolytope};
use super::GeomError;
use crate::rational::Rational;

/// Drops every point that is not a vertex of the hull of the list.
pub(crate) fn extreme_points(raw: &VPolytope) -> Result<VPolytope, GeomError> {
    let dim = raw.dim();
    if raw.len() <= 1 {
        return Ok(raw.clone());
    }
    let rows = facets_of_points(dim, raw.vertices())?;
    let vertices = raw
        .vertices()
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<Rational>> = rows
                .iter()
                .filter(|r| r.is_tight_at(p))
                .map(|r| r.coeffs.to_vec())
                .collect();
            linalg::rank(tight) == dim
        })
        .cloned()
        .collect();
    VPolytope::from_vertices(dim, vertices)
}

/// Canonical vertex description of `conv(∪ parts)`.
pub fn hull_of_union(dim: usize, parts: &[VPolytope]) -> Result<VPolytope, GeomError> {
    let mut points = Vec::new();
    for part in parts {
        check_dim(dim, part.dim())?;
        points.extend(part.vertices().iter().cloned());
    }
    VPolytope::from_points(dim, points)
}

/// Intersection of polytopes sharing a dimension, with redundant rows removed.
///
/// A row is redundant when maximizing its left-hand side over the other kept
/// rows stays within its right-hand side; among rows describing the same
/// constraint the earliest one is kept.
pub fn intersect(polytopes: &[HPolytope]) -> Result<HPolytope, GeomError> {
    let first = polytopes.first().ok_or(GeomError::NoRows)?;
    let dim = first.dim();
    let mut rows = Vec::new();
    for p in polytopes {
        check_dim(dim, p.dim())?;
        rows.extend(p.rows().iter().cloned());
    }
    irredundant(dim, rows)
}

pub(crate) fn irredundant(dim: usize, rows: Vec<LinearRow>) -> Result<HPolytope, GeomError> {
    let mut seen = HashSet::new();
    let rows: Vec<LinearRow> = rows.into_iter().filter(|r| seen.insert(r.key())).collect();
    let joined = HPolytope::new(dim, rows)?;
    let vertices = dd_convert_h_to_v(&joined)?;
    if vertices.is_empty() {
        return Ok(HPolytope::empty(dim));
    }

    // A minimal description is the implicit equalities plus one row per
    // facet, so an inequality whose tight vertices span a smaller face than a
    // facet is implied by the rest. This leaves few rows for the LP test.
    let lifted: Vec<Vec<Rational>> = vertices
        .vertices()
        .iter()
        .map(|v| std::iter::once(Rational::from_integer(1.into())).chain(v.iter().cloned()).collect())
        .collect();
    let full_rank = linalg::rank(lifted.clone());
    let mut kept: Vec<LinearRow> = joined
        .into_rows()
        .into_iter()
        .filter(|r| {
            if r.rel == Relation::Eq {
                return true;
            }
            let tight: Vec<Vec<Rational>> = vertices
                .vertices()
                .iter()
                .zip(&lifted)
                .filter(|(v, _)| r.is_tight_at(v))
                .map(|(_, l)| l.clone())
                .collect();
            tight.len() == lifted.len() || (!tight.is_empty() && linalg::rank(tight) + 1 == full_rank)
        })
        .collect();

    // Walk backwards so that of two equivalent rows the earlier survives.
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let others: Vec<&LinearRow> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r)
            .collect();
        if is_implied(dim, &others, &kept[i]) {
            kept.remove(i);
        }
    }
    if kept.is_empty() {
        return Err(GeomError::Unbounded);
    }
    HPolytope::new(dim, kept)
}

fn is_implied(dim: usize, others: &[&LinearRow], row: &LinearRow) -> bool {
    let le = row.as_le();
    let within = |objective: &[Rational], bound: &Rational| match max_over_feasible(dim, others, objective) {
        FeasibleMax::Bounded(v) => v <= *bound,
        FeasibleMax::Unbounded => false,
    };
    if !within(&le.coeffs, &le.rhs) {
        return false;
    }
    if le.rel == Relation::Eq {
        let neg: Vec<Rational> = le.coeffs.iter().map(|c| -c.clone()).collect();
        return within(&neg, &-le.rhs.clone());
    }
    true
}
