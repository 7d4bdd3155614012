//! Fixtures and independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;

use cutrank::certificates::{CertDAG, ChildEdge, DagBuilder, Reference};
use cutrank::constructions::{random_regular_graph, round_point, Graph, HalfIntegralPoint, HalfValue};
use cutrank::exactgeom::{
    dd_convert_v_to_h, hrep_contains, HPolytope, LinearRow, RatVector, Relation, VPolytope,
};
use cutrank::rational::{half, int, Rational};

pub fn hp(values: &[&str]) -> HalfIntegralPoint {
    HalfIntegralPoint::new(
        values
            .iter()
            .map(|v| match *v {
                "0" => HalfValue::Zero,
                "h" | "1/2" => HalfValue::Half,
                "1" => HalfValue::One,
                other => panic!("bad entry {other}"),
            })
            .collect(),
    )
}

/// The nine points whose hull is the polytope of the worked certificate example.
pub fn figure_points() -> Vec<RatVector> {
    [
        ["1", "0", "0", "0"],
        ["1", "0", "0", "1"],
        ["1", "0", "1", "1"],
        ["0", "1", "1", "0"],
        ["0", "1", "1", "1"],
        ["0", "1", "0", "0"],
        ["0", "1", "0", "1"],
        ["1", "0", "1", "h"],
        ["1", "0", "h", "1"],
    ]
    .iter()
    .map(|p| hp(p).to_rational())
    .collect()
}

pub fn figure_polytope() -> HPolytope {
    let v = VPolytope::from_points(4, figure_points()).unwrap();
    dd_convert_v_to_h(&v).unwrap()
}

/// The example tree: the root averages two blue children; the `(0,1,·,·)`
/// side is rounded twice, the `(1,0,·,·)` side is split three ways.
pub fn figure_certificate() -> CertDAG {
    let mut dag = DagBuilder::new();
    let node = |dag: &mut DagBuilder, p: &[&str]| dag.intern(hp(p), 0).0;
    let root = node(&mut dag, &["h", "h", "h", "h"]);
    let a = node(&mut dag, &["1", "0", "h", "h"]);
    let b = node(&mut dag, &["0", "1", "h", "h"]);
    dag.node_mut(root).children = vec![ChildEdge::blue(a), ChildEdge::blue(b)];

    let red = |dag: &mut DagBuilder, parent: usize| {
        let x = dag.node_mut(parent).label.clone();
        let mut edges = Vec::new();
        let mut fresh = Vec::new();
        for j in x.fractional_support() {
            for a in [false, true] {
                let (id, new) = dag.intern(round_point(&x, &[j], a).unwrap(), 0);
                if new {
                    fresh.push(id);
                }
                edges.push(ChildEdge::red(id, vec![j], a));
            }
        }
        dag.node_mut(parent).children = edges;
        fresh
    };
    for child in red(&mut dag, b) {
        red(&mut dag, child);
    }

    let a1 = node(&mut dag, &["1", "0", "1", "h"]);
    let a2 = node(&mut dag, &["1", "0", "h", "1"]);
    let a3 = node(&mut dag, &["1", "0", "0", "0"]);
    dag.node_mut(a).children = vec![ChildEdge::blue(a1), ChildEdge::blue(a2), ChildEdge::blue(a3)];
    red(&mut dag, a2);
    dag.finish(1, Reference::HPolytope(figure_polytope()), root).unwrap()
}

/// All points of `{0,1/2,1}^n` in lexicographic order.
pub fn half_integral_points(n: usize) -> Vec<HalfIntegralPoint> {
    (0..n)
        .map(|_| [HalfValue::Zero, HalfValue::Half, HalfValue::One])
        .multi_cartesian_product()
        .map(HalfIntegralPoint::new)
        .collect()
}

/// Best certifiable `prank` lower bound for `root`, over every finite
/// certificate whose labels are half-integral points of `p` (t-rounding red
/// steps, arbitrary blue steps). `levels[k]` is the set of points whose bound
/// reaches `k`; each level is a least fixed point of the blue rule.
pub fn best_certificate_bound(p: &HPolytope, t: usize, root: &HalfIntegralPoint) -> usize {
    let inside: Vec<HalfIntegralPoint> = half_integral_points(p.dim())
        .into_iter()
        .filter(|x| hrep_contains(p, &x.to_rational()).unwrap())
        .collect();
    assert!(inside.contains(root));
    let mut level: BTreeSet<HalfIntegralPoint> = inside.iter().cloned().collect();
    let mut k = 0;
    loop {
        let mut next: BTreeSet<HalfIntegralPoint> = inside
            .iter()
            .filter(|x| {
                let support = x.fractional_support();
                support.len() >= t
                    && (1..=t).all(|size| {
                        support.iter().copied().combinations(size).all(|j| {
                            [false, true]
                                .iter()
                                .all(|&a| level.contains(&round_point(x, &j, a).unwrap()))
                        })
                    })
            })
            .cloned()
            .collect();
        loop {
            let added: Vec<HalfIntegralPoint> = inside
                .iter()
                .filter(|x| !next.contains(*x))
                .filter(|x| {
                    let pts: Vec<RatVector> = next.iter().map(|y| y.to_rational()).collect();
                    !pts.is_empty() && in_hull_oracle(&x.to_rational(), &pts)
                })
                .cloned()
                .collect();
            if added.is_empty() {
                break;
            }
            next.extend(added);
        }
        if !next.contains(root) {
            return k;
        }
        level = next;
        k += 1;
    }
}

/// Solves a square system by Gaussian elimination; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Vertices by brute force: solve every `dim`-subset of rows as equations
/// and keep the feasible solutions.
pub fn brute_force_vertices(p: &HPolytope) -> BTreeSet<RatVector> {
    let d = p.dim();
    let mut out = BTreeSet::new();
    for subset in p.rows().iter().combinations(d) {
        let a = subset.iter().map(|r| r.coeffs.to_vec()).collect();
        let b = subset.iter().map(|r| r.rhs.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            let x = RatVector::new(x);
            if hrep_contains(p, &x).unwrap() {
                out.insert(x);
            }
        }
    }
    out
}

/// Membership in a convex hull by a different route than the library: an
/// exact Fourier–Motzkin-free check through vertex enumeration of the
/// multiplier simplex `{λ ≥ 0, Σλ = 1, Σ λ_i p_i = x}` (feasible iff it has
/// a vertex, which is a basic solution of the equality system).
pub fn in_hull_oracle(x: &RatVector, points: &[RatVector]) -> bool {
    let m = points.len();
    let d = x.len();
    // Rows: d coordinate equations plus the sum row; columns: multipliers.
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    rows.push(vec![int(1); m]);
    let mut rhs: Vec<Rational> = x.to_vec();
    rhs.push(int(1));
    // Any basic feasible solution uses an independent set of at most d+1 columns.
    for size in 1..=m.min(d + 1) {
        for cols in (0..m).combinations(size) {
            if let Some(lambda) = least_squares_exact(&rows, &rhs, &cols) {
                if lambda.iter().all(|l| *l >= int(0)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Exact solution of `A[:, cols] λ = b` if the columns are independent and
/// the system is consistent.
fn least_squares_exact(a: &[Vec<Rational>], b: &[Rational], cols: &[usize]) -> Option<Vec<Rational>> {
    let r = a.len();
    let k = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|&c| a[i][c].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let p = (pivot_row..r).find(|&i| !m[i][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = Rational::from_integer(1.into()) / &m[pivot_row][col];
        for c in 0..=k {
            m[pivot_row][c] = &m[pivot_row][c] * &inv;
        }
        for i in 0..r {
            if i != pivot_row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..=k {
                    let v = &f * &m[pivot_row][c];
                    m[i][c] -= v;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Graphs with an odd number of vertices from random cubic graphs on
/// `|V| + 1` vertices with vertex 0 deleted.
pub fn odd_near_cubic_graph(odd_n: usize, seed: u64) -> Graph {
    random_regular_graph(odd_n + 1, 3, seed).unwrap().without_vertex(0).unwrap()
}

pub fn is_half_vector(v: &RatVector) -> bool {
    v.iter().all(|c| *c == half())
}

/// `a·x ≤ b` for a small integer row.
pub fn le(coeffs: &[i64], rhs: Rational) -> LinearRow {
    LinearRow::new(RatVector::from_ints(coeffs), Relation::Le, rhs)
}

/// A random polytope in `[0,1]^dim` whose defining points have coordinates in
/// `{0, 1/2, 1}` (or `{0, 1/4, …, 1}` when `quarters`).
pub fn random_polytope(dim: usize, points: usize, quarters: bool, seed: u64) -> VPolytope {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let den = if quarters { 4 } else { 2 };
    let pts = (0..points)
        .map(|_| {
            (0..dim)
                .map(|_| Rational::new(rng.random_range(0..=den).into(), den.into()))
                .collect()
        })
        .collect();
    VPolytope::from_points(dim, pts).unwrap()
}
