use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use super::dag::{CertDAG, ChildEdge, Color};
use super::CertError;
use crate::constructions::{round_point, HalfIntegralPoint};
use crate::exactgeom::{conv_membership, hrep_contains, HPolytope, VPolytope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub node: usize,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// Fewest red edges on any root-to-leaf path.
    pub min_red_count: usize,
    /// Most red edges on any root-to-leaf path (informational only; it is
    /// not a bound).
    pub max_red_count: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    /// Rank lower bound implied by a valid report.
    pub fn rank_lower_bound(&self) -> Option<usize> {
        self.valid.then_some(self.min_red_count + 1)
    }
}

/// Every nonempty `J ⊆ support` with `|J| ≤ t`, by size and then lexicographically.
pub(crate) fn rounding_sets(support: &[usize], t: usize) -> Vec<Vec<usize>> {
    (1..=t.min(support.len()))
        .flat_map(|k| support.iter().copied().combinations(k))
        .collect()
}

/// Checks a certificate against `polytope` with exact H-membership.
pub fn verify_certificate(cert: &CertDAG, polytope: &HPolytope, t: usize) -> VerifyReport {
    verify_with(cert, t, &|x| {
        x.len() == polytope.dim() && hrep_contains(polytope, &x.to_rational()).unwrap_or(false)
    })
}

/// Checks a certificate against the polytope it embeds.
pub fn verify_against_reference(cert: &CertDAG) -> VerifyReport {
    verify_with(cert, cert.t, &|x| cert.reference.contains(x))
}

fn verify_with(
    cert: &CertDAG,
    t: usize,
    member: &dyn Fn(&HalfIntegralPoint) -> bool,
) -> VerifyReport {
    let mut failures = Vec::new();
    let mut fail = |node: usize, rule: String| failures.push(Failure { node, rule });

    for node in cert.nodes() {
        let id = node.id;
        let x = &node.label;
        if !member(x) {
            fail(id, format!("label {x} is not in the polytope"));
        }
        let colors: HashSet<Color> = node.children.iter().map(|e| e.color).collect();
        if colors.len() > 1 {
            fail(id, "node mixes red and blue children".into());
            continue;
        }
        match colors.into_iter().next() {
            None => {}
            Some(Color::Red) => {
                let support = x.fractional_support();
                if support.len() < t {
                    fail(id, format!("red node has |E(x)| = {} < t = {t}", support.len()));
                }
                let mut present = HashSet::new();
                for edge in &node.children {
                    let (Some(j), Some(a)) = (&edge.j, edge.a) else {
                        fail(id, format!("red edge to {} lacks J or a", edge.id));
                        continue;
                    };
                    if j.is_empty() || j.len() > t || a > 1 {
                        fail(id, format!("red edge to {} has invalid J={j:?}, a={a}", edge.id));
                        continue;
                    }
                    let mut j_sorted = j.clone();
                    j_sorted.sort_unstable();
                    match round_point(x, &j_sorted, a == 1) {
                        Ok(expected) if expected == cert.node(edge.id).label => {
                            present.insert((j_sorted, a));
                        }
                        Ok(_) => fail(
                            id,
                            format!("red child {} is not the rounding J={j:?}, a={a}", edge.id),
                        ),
                        Err(_) => fail(id, format!("red edge J={j:?} is not inside E(x)")),
                    }
                }
                for j in rounding_sets(&support, t) {
                    for a in [0u8, 1] {
                        if !present.contains(&(j.clone(), a)) {
                            fail(id, format!("missing red child J={j:?}, a={a}"));
                        }
                    }
                }
            }
            Some(Color::Blue) => {
                let labels: Vec<&HalfIntegralPoint> =
                    node.children.iter().map(|e| &cert.node(e.id).label).collect();
                if labels.contains(&x) {
                    fail(id, "label is one of its blue children".into());
                }
                let hull = VPolytope::from_vertices(
                    x.len(),
                    labels.iter().map(|l| l.to_rational()).collect(),
                );
                let inside = hull
                    .ok()
                    .and_then(|h| conv_membership(&x.to_rational(), &h).ok())
                    .flatten()
                    .is_some();
                if !inside {
                    fail(id, "label is not in the hull of its blue children".into());
                }
            }
        }
    }

    let order = match topological_order(cert) {
        Ok(order) => order,
        Err(node) => {
            fail(node, "cycle through this node".into());
            return VerifyReport { valid: false, min_red_count: 0, max_red_count: 0, failures };
        }
    };
    let (min_red_count, max_red_count) = red_counts(cert, &order);
    VerifyReport { valid: failures.is_empty(), min_red_count, max_red_count, failures }
}

/// Nodes reachable from the root in reverse topological order (children
/// first), or a node on a cycle.
fn topological_order(cert: &CertDAG) -> Result<Vec<usize>, usize> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; cert.len()];
    let mut order = Vec::new();
    let mut stack = vec![(cert.root(), 0usize)];
    mark[cert.root()] = Mark::Open;
    while let Some(&mut (id, ref mut next)) = stack.last_mut() {
        let children = &cert.node(id).children;
        if *next < children.len() {
            let child = children[*next].id;
            *next += 1;
            match mark[child] {
                Mark::New => {
                    mark[child] = Mark::Open;
                    stack.push((child, 0));
                }
                Mark::Open => return Err(child),
                Mark::Done => {}
            }
        } else {
            mark[id] = Mark::Done;
            order.push(id);
            stack.pop();
        }
    }
    Ok(order)
}

fn red_counts(cert: &CertDAG, order: &[usize]) -> (usize, usize) {
    let mut lo = vec![0usize; cert.len()];
    let mut hi = vec![0usize; cert.len()];
    for &id in order {
        let children = &cert.node(id).children;
        if children.is_empty() {
            continue;
        }
        let step = |e: &ChildEdge| usize::from(e.color == Color::Red);
        lo[id] = children.iter().map(|e| lo[e.id] + step(e)).min().unwrap_or(0);
        hi[id] = children.iter().map(|e| hi[e.id] + step(e)).max().unwrap_or(0);
    }
    (lo[cert.root()], hi[cert.root()])
}

/// `min_red_count` of a certificate that verifies against its own reference.
pub fn lower_bound(cert: &CertDAG) -> Result<usize, CertError> {
    let report = verify_against_reference(cert);
    match report.failures.first() {
        None => Ok(report.min_red_count),
        Some(f) => Err(CertError::Unverified { node: f.node, rule: f.rule.clone() }),
    }
}
