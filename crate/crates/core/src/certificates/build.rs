use itertools::Itertools;
use log::debug;
use rayon::prelude::*;

use super::dag::{CertDAG, ChildEdge, DagBuilder, Reference};
use super::verify::rounding_sets;
use super::CertError;
use crate::constructions::{
    round_point, tseitin_membership, Graph, HalfIntegralPoint, HalfValue,
};
use crate::guards::Guards;
use crate::parity::{enumerate_parity_solutions, solutions_average, ParitySystem};
use crate::rational::half;

/// What happens at one node.
enum Step {
    Leaf,
    Red(Vec<(Vec<usize>, bool, HalfIntegralPoint)>),
    Blue { cut: Vec<usize>, children: Vec<HalfIntegralPoint> },
    /// Blue step whose children would exhaust the budget and are not all in
    /// the polytope; the node becomes a leaf and keeps its `U`.
    Truncated { cut: Vec<usize> },
}

/// `e_x(U, V(x) ∖ U)`: 1/2-edges with exactly one endpoint in `U`.
fn half_cut(graph: &Graph, half_edges: &[usize], in_u: &[bool]) -> usize {
    half_edges
        .iter()
        .filter(|&&e| {
            let (a, b) = graph.edges()[e];
            in_u[a] != in_u[b]
        })
        .count()
}

/// Largest (then lexicographically first) `U ⊆ V(x)` with `|U| ≤ ell` and
/// `e_x(U, V(x) ∖ U) ≤ (t+1)|U|`. A largest violator is inclusion-maximal.
fn maximal_violator(
    graph: &Graph,
    x: &HalfIntegralPoint,
    ell: usize,
    t: usize,
) -> Option<Vec<usize>> {
    let vx = x.fractional_vertices(graph);
    let half_edges = x.fractional_support();
    let mut in_u = vec![false; graph.n()];
    for size in (1..=ell.min(vx.len())).rev() {
        for u in vx.iter().copied().combinations(size) {
            for &v in &u {
                in_u[v] = true;
            }
            let cut = half_cut(graph, &half_edges, &in_u);
            for &v in &u {
                in_u[v] = false;
            }
            if cut <= (t + 1) * size {
                return Some(u);
            }
        }
    }
    None
}

/// All 0-1 settings of the 1/2-edges touching `U` that give every vertex of
/// `U` an odd number of 1-edges; they must average to `x`.
fn blue_children(
    graph: &Graph,
    x: &HalfIntegralPoint,
    cut: &[usize],
    node: usize,
    guards: &Guards,
) -> Result<Vec<HalfIntegralPoint>, CertError> {
    let touched: Vec<usize> = x
        .fractional_support()
        .into_iter()
        .filter(|&e| {
            let (a, b) = graph.edges()[e];
            cut.contains(&a) || cut.contains(&b)
        })
        .collect();
    let rows: Vec<Vec<bool>> = cut
        .iter()
        .map(|&u| {
            touched
                .iter()
                .map(|&e| {
                    let (a, b) = graph.edges()[e];
                    a == u || b == u
                })
                .collect()
        })
        .collect();
    let rhs: Vec<bool> = cut
        .iter()
        .map(|&u| {
            let ones = graph
                .incident_edges(u)
                .iter()
                .filter(|&&e| x.get(e) == HalfValue::One)
                .count();
            ones % 2 == 0
        })
        .collect();
    let system = ParitySystem::new(touched.len(), rows, rhs)?;
    let solutions = enumerate_parity_solutions(&system, guards.max_blue_children)?;
    if solutions.is_empty() {
        return Err(CertError::NoParitySolution { node });
    }
    let average = solutions_average(&system).expect("system is feasible");
    if average.iter().any(|v| *v != half()) {
        return Err(CertError::BlueAverage { node });
    }
    Ok(solutions
        .iter()
        .map(|bits| {
            let mut values = x.values().to_vec();
            for (k, &e) in touched.iter().enumerate() {
                values[e] = HalfValue::from_bit(bits.get(k));
            }
            HalfIntegralPoint::new(values)
        })
        .collect())
}

fn expand(
    graph: &Graph,
    x: &HalfIntegralPoint,
    ell: usize,
    t: usize,
    node: usize,
    guards: &Guards,
) -> Result<Step, CertError> {
    let support = x.fractional_support();
    if ell == 0 || support.len() < t {
        return Ok(Step::Leaf);
    }
    let Some(cut) = maximal_violator(graph, x, ell, t) else {
        let mut children = Vec::new();
        for j in rounding_sets(&support, t) {
            for a in [false, true] {
                let y = round_point(x, &j, a)?;
                children.push((j.clone(), a, y));
            }
        }
        return Ok(Step::Red(children));
    };
    let children = blue_children(graph, x, &cut, node, guards)?;
    let child_ell = ell - cut.len();
    let all_inside = children.iter().all(|y| tseitin_membership(graph, y).unwrap_or(false));
    if !all_inside {
        if child_ell == 0 {
            return Ok(Step::Truncated { cut });
        }
        return Err(CertError::ChildOutside { node });
    }
    Ok(Step::Blue { cut, children })
}

/// Builds the {0,1/2}-certificate for the Tseitin polytope of a graph with an
/// odd number of vertices, rooted at `½·1` with budget `⌊|V|/2⌋`.
///
/// A node with budget `ℓ > 0` and at least `t` fractional edges gets red
/// children (every rounding of at most `t` coordinates, same budget) when
/// each `U ⊆ V(x)` with `|U| ≤ ℓ` has more than `(t+1)|U|` cut 1/2-edges;
/// otherwise it gets blue children on a maximal violating `U`, with budget
/// `ℓ − |U|`. Blue children with budget 0 are kept only when they all lie in
/// the polytope; otherwise the node is a leaf that records `U`.
///
/// Nodes are expanded level by level, each level in parallel; ids are
/// assigned in a fixed order so the result does not depend on scheduling.
pub fn build_certificate(graph: &Graph, t: usize, guards: &Guards) -> Result<CertDAG, CertError> {
    let n = graph.n();
    if n % 2 == 0 {
        return Err(CertError::EvenVertexCount { n });
    }
    if t == 0 || t > guards.max_t {
        return Err(CertError::Guard { what: "t", value: t, limit: guards.max_t });
    }
    if n > guards.max_subset_vertices {
        return Err(CertError::Guard {
            what: "vertex count for subset search",
            value: n,
            limit: guards.max_subset_vertices,
        });
    }
    let root_label = HalfIntegralPoint::all_half(graph.edge_count());
    if !tseitin_membership(graph, &root_label)? {
        return Err(CertError::RootOutside);
    }
    let mut dag = DagBuilder::new();
    let (root, _) = dag.intern(root_label.clone(), n / 2);
    let mut frontier = vec![(root, root_label, n / 2)];
    while !frontier.is_empty() {
        let steps: Vec<Step> = frontier
            .par_iter()
            .map(|(id, x, ell)| expand(graph, x, *ell, t, *id, guards))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for ((id, _, ell), step) in frontier.iter().zip(steps) {
            let mut edges = Vec::new();
            match step {
                Step::Leaf => {}
                Step::Truncated { cut } => dag.node_mut(*id).cut_set = Some(cut),
                Step::Red(children) => {
                    for (j, a, y) in children {
                        let (cid, fresh) = dag.intern(y.clone(), *ell);
                        if fresh {
                            next.push((cid, y, *ell));
                        }
                        edges.push(ChildEdge::red(cid, j, a));
                    }
                }
                Step::Blue { cut, children } => {
                    let child_ell = ell - cut.len();
                    for y in children {
                        let (cid, fresh) = dag.intern(y.clone(), child_ell);
                        if fresh {
                            next.push((cid, y, child_ell));
                        }
                        edges.push(ChildEdge::blue(cid));
                    }
                    dag.node_mut(*id).cut_set = Some(cut);
                }
            }
            dag.node_mut(*id).children = edges;
            if dag.len() > guards.max_nodes {
                return Err(CertError::Guard {
                    what: "certificate nodes",
                    value: dag.len(),
                    limit: guards.max_nodes,
                });
            }
        }
        debug!("certificate level done: {} nodes, {} pending", dag.len(), next.len());
        frontier = next;
    }
    dag.finish(t, Reference::Tseitin(graph.clone()), root)
}
