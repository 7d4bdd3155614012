use itertools::Itertools;
use serde::Serialize;

use super::{ConstructionError, Graph};
use crate::rational::{serde_rational, Rational};

pub const MAX_EXPANSION_VERTICES: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    /// `min e(S, V∖S) / |S|` over nonempty `S` with `|S| ≤ n/2`.
    #[serde(with = "serde_rational")]
    pub expansion: Rational,
    /// A minimizing set, ascending.
    pub witness: Vec<usize>,
    /// Number of sets examined.
    pub examined: u64,
}

/// Exact edge expansion by exhaustive search. Sets are visited by size and
/// then lexicographically, and only a strictly better ratio replaces the
/// incumbent, so ties go to the smaller and then lexicographically first set.
pub fn edge_expansion(graph: &Graph) -> Result<ExpansionReport, ConstructionError> {
    let n = graph.n();
    if n > MAX_EXPANSION_VERTICES {
        return Err(ConstructionError::TooLarge {
            what: "vertex count for exhaustive expansion (certificates use bounded subset search)",
            value: n,
            limit: MAX_EXPANSION_VERTICES,
        });
    }
    if n < 2 {
        return Err(ConstructionError::TooSmall { n });
    }
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut examined = 0u64;
    for size in 1..=n / 2 {
        for set in (0..n).combinations(size) {
            examined += 1;
            let mask = set.iter().fold(0u64, |m, &v| m | 1 << v);
            let ratio = Rational::new(graph.cut_size(mask).into(), size.into());
            if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                best = Some((ratio, set));
            }
        }
    }
    let (expansion, witness) = best.expect("n >= 2 gives at least one set");
    Ok(ExpansionReport { expansion, witness, examined })
}
