use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::CertError;
use crate::constructions::{tseitin_membership, Graph, HalfIntegralPoint};
use crate::exactgeom::{hrep_contains, HPolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildEdge {
    pub id: usize,
    pub color: Color,
    /// Rounded coordinates, for red edges.
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    /// Rounding direction (0 or 1), for red edges.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u8>,
}

impl ChildEdge {
    pub fn red(id: usize, j: Vec<usize>, a: bool) -> Self {
        ChildEdge { id, color: Color::Red, j: Some(j), a: Some(a as u8) }
    }

    pub fn blue(id: usize) -> Self {
        ChildEdge { id, color: Color::Blue, j: None, a: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Root,
    Internal,
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub id: usize,
    pub label: HalfIntegralPoint,
    pub ell: usize,
    #[serde(default)]
    pub children: Vec<ChildEdge>,
    /// Vertex set used for the blue step at this node (also kept when the
    /// blue children were dropped because they would end the budget).
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub cut_set: Option<Vec<usize>>,
}

/// The polytope a certificate speaks about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Reference {
    Tseitin(Graph),
    HPolytope(HPolytope),
}

impl Reference {
    pub fn dim(&self) -> usize {
        match self {
            Reference::Tseitin(g) => g.edge_count(),
            Reference::HPolytope(p) => p.dim(),
        }
    }

    /// Exact membership, via the vertex conditions for Tseitin polytopes.
    pub fn contains(&self, x: &HalfIntegralPoint) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            Reference::Tseitin(g) => tseitin_membership(g, x).unwrap_or(false),
            Reference::HPolytope(p) => hrep_contains(p, &x.to_rational()).unwrap_or(false),
        }
    }
}

/// A {0,1/2}-certificate, stored as a DAG whose nodes are indexed by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertDAG {
    pub t: usize,
    pub reference: Reference,
    nodes: Vec<CertNode>,
    root: usize,
}

impl CertDAG {
    /// Checks that ids are `0..nodes.len()` in order and every edge points to a node.
    pub fn new(
        t: usize,
        reference: Reference,
        nodes: Vec<CertNode>,
        root: usize,
    ) -> Result<Self, CertError> {
        for (i, node) in nodes.iter().enumerate() {
            if node.id != i {
                return Err(CertError::Malformed(format!("node at position {i} has id {}", node.id)));
            }
            if let Some(edge) = node.children.iter().find(|e| e.id >= nodes.len()) {
                return Err(CertError::Malformed(format!(
                    "node {i} points to missing node {}",
                    edge.id
                )));
            }
        }
        if root >= nodes.len() {
            return Err(CertError::Malformed(format!("root {root} is not a node")));
        }
        if t == 0 {
            return Err(CertError::Malformed("t must be positive".into()));
        }
        Ok(CertDAG { t, reference, nodes, root })
    }

    pub fn nodes(&self) -> &[CertNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &CertNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn kind(&self, id: usize) -> NodeKind {
        if id == self.root {
            NodeKind::Root
        } else if self.nodes[id].children.is_empty() {
            NodeKind::Leaf
        } else {
            NodeKind::Internal
        }
    }

    /// Graphviz rendering: red edges carry `J`/`a`, nodes show `E(x)` and `ℓ`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph certificate {\n  node [shape=box];\n");
        for node in &self.nodes {
            let support: Vec<String> =
                node.label.fractional_support().iter().map(|e| e.to_string()).collect();
            let mut text = format!("#{} E={{{}}} l={}", node.id, support.join(","), node.ell);
            if let Some(u) = &node.cut_set {
                let u: Vec<String> = u.iter().map(|v| v.to_string()).collect();
                let _ = write!(text, " U={{{}}}", u.join(","));
            }
            let style = if node.id == self.root { ", style=bold" } else { "" };
            let _ = writeln!(out, "  n{} [label=\"{}\"{}];", node.id, text, style);
        }
        for node in &self.nodes {
            for edge in &node.children {
                match edge.color {
                    Color::Red => {
                        let j: Vec<String> =
                            edge.j.iter().flatten().map(|e| e.to_string()).collect();
                        let _ = writeln!(
                            out,
                            "  n{} -> n{} [color=red, label=\"J={{{}}} a={}\"];",
                            node.id,
                            edge.id,
                            j.join(","),
                            edge.a.unwrap_or(0)
                        );
                    }
                    Color::Blue => {
                        let _ = writeln!(out, "  n{} -> n{} [color=blue];", node.id, edge.id);
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl<'de> Deserialize<'de> for CertDAG {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            t: usize,
            reference: Reference,
            nodes: Vec<CertNode>,
            root: usize,
        }
        let raw = Raw::deserialize(deserializer)?;
        CertDAG::new(raw.t, raw.reference, raw.nodes, raw.root).map_err(serde::de::Error::custom)
    }
}

/// Incremental construction with one node per `(label, ℓ)`.
#[derive(Debug, Default)]
pub struct DagBuilder {
    nodes: Vec<CertNode>,
    index: HashMap<(HalfIntegralPoint, usize), usize>,
}

impl DagBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of the node for `(label, ell)`, and whether it was newly created.
    pub fn intern(&mut self, label: HalfIntegralPoint, ell: usize) -> (usize, bool) {
        if let Some(&id) = self.index.get(&(label.clone(), ell)) {
            return (id, false);
        }
        let id = self.nodes.len();
        self.nodes.push(CertNode { id, label: label.clone(), ell, children: Vec::new(), cut_set: None });
        self.index.insert((label, ell), id);
        (id, true)
    }

    pub fn node_mut(&mut self, id: usize) -> &mut CertNode {
        &mut self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn finish(self, t: usize, reference: Reference, root: usize) -> Result<CertDAG, CertError> {
        CertDAG::new(t, reference, self.nodes, root)
    }
}
