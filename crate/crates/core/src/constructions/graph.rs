use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::parity::ParitySystem;

/// Simple undirected graph on `{0..n-1}`. The edge order is the coordinate
/// order of every derived polytope and point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    incidence: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and stores the edges in the given order, each as `(min, max)`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, ConstructionError> {
        let mut seen = HashSet::new();
        let mut incidence = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (index, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(ConstructionError::VertexOutOfRange { edge: index, n });
            }
            if u == v {
                return Err(ConstructionError::SelfLoop { vertex: u });
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(ConstructionError::DuplicateEdge { u: e.0, v: e.1 });
            }
            incidence[u].push(index);
            incidence[v].push(index);
            normalized.push(e);
        }
        Ok(Graph { n, edges: normalized, incidence })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v)).collect()).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Result<Self, ConstructionError> {
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)).collect())
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        Graph::new(k + 1, (1..=k).map(|v| (0, v)).collect()).expect("star is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Indices of the edges at `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(move |&e| {
            let (a, b) = self.edges[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    /// Subgraph with one vertex deleted; remaining vertices are renumbered in
    /// order and edges keep their relative order.
    pub fn without_vertex(&self, removed: usize) -> Result<Self, ConstructionError> {
        let map = |v: usize| if v > removed { v - 1 } else { v };
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| u != removed && v != removed)
            .map(|&(u, v)| (map(u), map(v)))
            .collect();
        Graph::new(self.n.saturating_sub(1), edges)
    }

    /// Number of edges with exactly one endpoint in the vertex mask.
    pub fn cut_size(&self, mask: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
            .count()
    }

    /// The Tseitin parity system: every vertex has odd degree in the chosen edge set.
    pub fn odd_parity_system(&self) -> ParitySystem {
        let rows = (0..self.n)
            .map(|v| {
                let mut row = vec![false; self.edges.len()];
                for &e in &self.incidence[v] {
                    row[e] = true;
                }
                row
            })
            .collect();
        ParitySystem::new(self.edges.len(), rows, vec![true; self.n])
            .expect("rows match the edge count")
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses `p edge n m` / `e u v` text with 1-indexed vertices.
    pub fn from_dimacs(text: &str) -> Result<Self, ConstructionError> {
        let parse_err = |line: usize, msg: &str| ConstructionError::Parse(format!("line {line}: {msg}"));
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let fields: Vec<&str> = raw.split_whitespace().collect();
            match fields.as_slice() {
                [] | ["c", ..] => {}
                ["p", "edge", n, m] => {
                    if header.is_some() {
                        return Err(parse_err(line_no, "repeated header"));
                    }
                    let n = n.parse().map_err(|_| parse_err(line_no, "bad vertex count"))?;
                    let m = m.parse().map_err(|_| parse_err(line_no, "bad edge count"))?;
                    header = Some((n, m));
                }
                ["e", u, v] => {
                    if header.is_none() {
                        return Err(parse_err(line_no, "edge before header"));
                    }
                    let u: usize = u.parse().map_err(|_| parse_err(line_no, "bad endpoint"))?;
                    let v: usize = v.parse().map_err(|_| parse_err(line_no, "bad endpoint"))?;
                    if u == 0 || v == 0 {
                        return Err(parse_err(line_no, "vertices are 1-indexed"));
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(parse_err(line_no, "unrecognized line")),
            }
        }
        let (n, m) = header.ok_or_else(|| ConstructionError::Parse("missing 'p edge' header".into()))?;
        if edges.len() != m {
            return Err(ConstructionError::Parse(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::new(n, edges)
    }

    /// Accepts either the JSON form or DIMACS text.
    pub fn parse(text: &str) -> Result<Self, ConstructionError> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| ConstructionError::Parse(e.to_string()))
        } else {
            Graph::from_dimacs(text)
        }
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Graph::new(raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}
