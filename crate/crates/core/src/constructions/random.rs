use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ConstructionError, Graph};

/// Pairings tried before giving up.
pub const REJECTION_BUDGET: usize = 100_000;

/// Uniform-ish simple `d`-regular graph from the configuration model: shuffle
/// `n·d` half-edges, pair neighbours, and reject pairings with loops or
/// parallel edges. Edges come out sorted.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<Graph, ConstructionError> {
    if d == 0 || d >= n {
        return Err(ConstructionError::BadDegree { n, d });
    }
    if (n * d) % 2 == 1 {
        return Err(ConstructionError::OddDegreeSum { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..REJECTION_BUDGET {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Graph::new(n, edges);
    }
    Err(ConstructionError::RejectionBudget { attempts: REJECTION_BUDGET })
}
