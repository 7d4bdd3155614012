//! Double description method on homogenized integer cones.
//!
//! A polytope `{x : A x <= b}` is lifted to the cone `{(x0, x) : b x0 - A x >= 0,
//! x0 >= 0}`; its extreme rays with `x0 > 0` are the vertices. Facets of a
//! vertex set are the extreme rays of the polar cone `{(c0, c) : c0 + c·v >= 0}`,
//! computed inside the affine hull of the points.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg;
use super::lp::{lp_optimize, Sense};
use super::polytope::{HPolytope, LinearRow, Relation, VPolytope};
use super::vector::RatVector;
use super::GeomError;
use crate::rational::{self, divide_by_gcd, Rational};

#[derive(Debug)]
pub(crate) struct NotPointed;

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Extreme rays of the pointed cone `{y : row · y >= 0 for every row}`, rows
/// inserted in the given order. Fails if the cone contains a line.
pub(crate) fn cone_extreme_rays(
    rows: &[Vec<BigInt>],
    dim: usize,
) -> Result<Vec<Vec<BigInt>>, NotPointed> {
    let rows: Vec<&Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|v| !v.is_zero())).collect();
    let m = rows.len();

    // Greedy choice of `dim` independent rows for the initial simplicial cone.
    let mut chosen = Vec::with_capacity(dim);
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        let mut candidate = echelon.clone();
        candidate.push(row.iter().cloned().map(Rational::from_integer).collect());
        let (reduced, _) = linalg::rref(candidate);
        if reduced.len() > echelon.len() {
            echelon = reduced;
            chosen.push(i);
        }
    }
    if chosen.len() < dim {
        return Err(NotPointed);
    }
    let basis: Vec<Vec<Rational>> = chosen
        .iter()
        .map(|&i| rows[i].iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let inv = linalg::inverse(&basis).expect("chosen rows are independent");

    let mut rays: Vec<Ray> = (0..dim)
        .map(|col| {
            let column: Vec<Rational> = inv.iter().map(|r| r[col].clone()).collect();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &row_index) in chosen.iter().enumerate() {
                if k != col {
                    zeros.insert(row_index);
                }
            }
            Ray {
                coords: rational::primitive_integer_vector(&column),
                zeros,
            }
        })
        .collect();

    let mut is_chosen = vec![false; m];
    for &i in &chosen {
        is_chosen[i] = true;
    }
    for (k, row) in rows.iter().enumerate() {
        if is_chosen[k] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (ray, value) in rays.iter_mut().zip(&values) {
                if value.is_zero() {
                    ray.zeros.insert(k);
                }
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(yq, yp)| &values[p] * yq - &values[q] * yp)
                    .collect();
                common.insert(k);
                created.push(Ray {
                    coords: divide_by_gcd(coords),
                    zeros: common,
                });
            }
        }

        let mut next = Vec::with_capacity(rays.len() - negative.len() + created.len());
        for (mut ray, value) in rays.into_iter().zip(values) {
            if value.is_negative() {
                continue;
            }
            if value.is_zero() {
                ray.zeros.insert(k);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

fn sort_for_insertion(rows: &mut [Vec<BigInt>]) {
    rows.sort_by(|a, b| {
        let na = a.iter().filter(|v| !v.is_zero()).count();
        let nb = b.iter().filter(|v| !v.is_zero()).count();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
}

/// Homogenized cone rows `(rhs, -coeffs) >= 0` for a row `coeffs · x <= rhs`.
fn homogenize(row: &LinearRow) -> Vec<Vec<BigInt>> {
    let le = row.as_le();
    let mut entries: Vec<Rational> = Vec::with_capacity(le.dim() + 1);
    entries.push(le.rhs.clone());
    entries.extend(le.coeffs.iter().map(|c| -c.clone()));
    let forward = rational::primitive_integer_vector(&entries);
    if le.rel == Relation::Eq {
        let backward = forward.iter().map(|v| -v.clone()).collect();
        vec![forward, backward]
    } else {
        vec![forward]
    }
}

/// Vertex set of a bounded polytope. An empty polytope yields an empty
/// vertex list.
pub fn dd_convert_h_to_v(polytope: &HPolytope) -> Result<VPolytope, GeomError> {
    let dim = polytope.dim();
    let mut rows: Vec<Vec<BigInt>> = polytope.rows().iter().flat_map(homogenize).collect();
    let mut nonneg = vec![BigInt::zero(); dim + 1];
    nonneg[0] = BigInt::from(1);
    rows.push(nonneg);
    sort_for_insertion(&mut rows);
    rows.dedup();
    let rays = match cone_extreme_rays(&rows, dim + 1) {
        Ok(rays) => rays,
        Err(NotPointed) => {
            let zero = vec![Rational::zero(); dim];
            return if lp_optimize(polytope, &zero, Sense::Max)?.is_infeasible() {
                Ok(VPolytope::empty(dim))
            } else {
                Err(GeomError::Unbounded)
            };
        }
    };
    let vertices = rays
        .into_iter()
        .filter(|r| r[0].is_positive())
        .map(|r| {
            let scale = Rational::from_integer(r[0].clone());
            r[1..]
                .iter()
                .map(|v| Rational::from_integer(v.clone()) / &scale)
                .collect::<RatVector>()
        })
        .collect();
    VPolytope::from_vertices(dim, vertices)
}

/// Irredundant inequality description of a nonempty vertex set: the
/// equations of its affine hull followed by one `<=` row per facet.
pub fn dd_convert_v_to_h(hull: &VPolytope) -> Result<HPolytope, GeomError> {
    let rows = facets_of_points(hull.dim(), hull.vertices())?;
    HPolytope::new(hull.dim(), rows)
}

/// Same as [`dd_convert_v_to_h`] for an arbitrary (possibly redundant) point list.
pub(crate) fn facets_of_points(
    dim: usize,
    points: &[RatVector],
) -> Result<Vec<LinearRow>, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPolytope);
    }
    let lifted: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(dim + 1);
            row.push(Rational::from_integer(1.into()));
            row.extend(p.iter().cloned());
            row
        })
        .collect();

    let mut equations: Vec<LinearRow> = linalg::nullspace(lifted.clone(), dim + 1)
        .into_iter()
        .map(|z| {
            LinearRow::eq(z[1..].iter().cloned().collect(), -z[0].clone()).normalized()
        })
        .collect();
    equations.sort_by_key(LinearRow::key);

    let (_, pivots) = linalg::rref(lifted);
    let coords: Vec<usize> = pivots.into_iter().filter(|&c| c > 0).map(|c| c - 1).collect();
    let mut facets = Vec::new();
    if !coords.is_empty() {
        let mut polar: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let mut entries = vec![Rational::from_integer(1.into())];
                entries.extend(coords.iter().map(|&c| p[c].clone()));
                rational::primitive_integer_vector(&entries)
            })
            .collect();
        sort_for_insertion(&mut polar);
        polar.dedup();
        let rays = cone_extreme_rays(&polar, coords.len() + 1)
            .expect("points span their affine hull, so the polar cone is pointed");
        for ray in rays {
            // c0 + c·x_S >= 0  ==>  (-c)·x_S <= c0
            let mut coeffs = RatVector::zeros(dim).into_inner();
            for (k, &c) in coords.iter().enumerate() {
                coeffs[c] = -Rational::from_integer(ray[k + 1].clone());
            }
            let rhs = Rational::from_integer(ray[0].clone());
            facets.push(LinearRow::le(coeffs.into(), rhs).normalized());
        }
        facets.sort_by_key(LinearRow::key);
        facets.dedup();
    }
    equations.extend(facets);
    Ok(equations)
}
