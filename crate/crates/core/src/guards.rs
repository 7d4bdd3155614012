use serde::{Deserialize, Serialize};

/// Caps on the exponential parts of the toolkit. Exceeding one is an error,
/// never a silent approximation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Guards {
    /// Largest certificate DAG, in nodes.
    pub max_nodes: usize,
    /// Largest disjunction family evaluated in one closure round.
    pub max_family: usize,
    /// Largest dimension for 0-1 point enumeration.
    pub max_enumeration_dim: usize,
    /// Largest number of level combinations in one lattice disjunction.
    pub max_level_combinations: usize,
    /// Largest number of simultaneous splits.
    pub max_t: usize,
    /// Largest vertex count for exact vertex-subset searches.
    pub max_subset_vertices: usize,
    /// Largest number of blue children emitted at one node.
    pub max_blue_children: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_nodes: 200_000,
            max_family: 50_000,
            max_enumeration_dim: 20,
            max_level_combinations: 4096,
            max_t: 20,
            max_subset_vertices: 22,
            max_blue_children: 4096,
        }
    }
}
