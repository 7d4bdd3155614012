use super::dag::{CertDAG, ChildEdge, DagBuilder, Reference};
use super::verify::rounding_sets;
use super::CertError;
use crate::constructions::{cropped_cube, round_point, HalfIntegralPoint};
use crate::guards::Guards;

/// The uniform all-red certificate for the cropped cube: a node with more
/// than `t` fractional coordinates gets every rounding of at most `t` of
/// them, and all other nodes are leaves. Every point with a fractional
/// coordinate lies in the cropped cube, so the fewest red steps on a path is
/// `⌈n/t⌉ − 1`.
pub fn cropped_cube_certificate(n: usize, t: usize, guards: &Guards) -> Result<CertDAG, CertError> {
    if t == 0 || t > n {
        return Err(CertError::Guard { what: "t (must be in 1..=n)", value: t, limit: n });
    }
    let polytope = cropped_cube(n)?;
    let mut dag = DagBuilder::new();
    let (root, _) = dag.intern(HalfIntegralPoint::all_half(n), 0);
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        let x = dag.node_mut(id).label.clone();
        let support = x.fractional_support();
        if support.len() <= t {
            continue;
        }
        let mut edges = Vec::new();
        for j in rounding_sets(&support, t) {
            for a in [false, true] {
                let (cid, fresh) = dag.intern(round_point(&x, &j, a)?, 0);
                if fresh {
                    stack.push(cid);
                }
                edges.push(ChildEdge::red(cid, j.clone(), a));
            }
        }
        dag.node_mut(id).children = edges;
        if dag.len() > guards.max_nodes {
            return Err(CertError::Guard {
                what: "certificate nodes",
                value: dag.len(),
                limit: guards.max_nodes,
            });
        }
    }
    dag.finish(t, Reference::HPolytope(polytope), root)
}
