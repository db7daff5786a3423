//! Finite multigraphs with loops and parallel edges.
//!
//! Vertices and edges carry string ids that survive deletion and
//! contraction of other edges. Algorithms address them by position
//! (`usize` indices into the current graph); indices shift when an element
//! is removed, ids never do.

pub mod canon;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitset::{EdgeSet, MAX_EDGES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("unknown edge id {0:?}")]
    UnknownEdgeId(String),
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {0:?} is a loop and cannot be contracted")]
    ContractLoop(String),
    #[error("graph has {0} edges; at most {MAX_EDGES} are supported here")]
    TooManyEdges(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// The endpoint opposite `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A spanning subgraph of `parent`, identified with its edge set.
#[derive(Debug, Clone, Copy)]
pub struct SpanningSubgraph<'g> {
    pub parent: &'g Multigraph,
    pub edges: EdgeSet,
}

impl SpanningSubgraph<'_> {
    /// Number of connected components of `(V, edges)`.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.parent.vertex_count());
        for e in self.edges.iter() {
            let (u, v) = self.parent.edges[e].ends;
            uf.union(u, v);
        }
        uf.components()
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `v0..v{n-1}` with edges `e0, e1, ...` in the given order.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Multigraph::new();
        for v in 0..vertex_count {
            g.vertices.push(format!("v{v}"));
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert!(
                u < vertex_count && v < vertex_count,
                "endpoint out of range"
            );
            g.edges.push(Edge {
                id: format!("e{i}"),
                ends: (u, v),
            });
        }
        g
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize, GraphError> {
        let id = id.into();
        if self.vertex_index(&id).is_some() {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.vertices.push(id);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        u: &str,
        v: &str,
    ) -> Result<usize, GraphError> {
        let id = id.into();
        if self.edge_index(&id).is_some() {
            return Err(GraphError::DuplicateEdge(id));
        }
        let ui = self
            .vertex_index(u)
            .ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
        let vi = self
            .vertex_index(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
        self.edges.push(Edge { id, ends: (ui, vi) });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&Edge, GraphError> {
        self.edges.get(e).ok_or(GraphError::UnknownEdge(e))
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len().min(MAX_EDGES))
    }

    pub fn ensure_bitset_sized(&self) -> Result<(), GraphError> {
        if self.edges.len() > MAX_EDGES {
            Err(GraphError::TooManyEdges(self.edges.len()))
        } else {
            Ok(())
        }
    }

    pub fn spanning_subgraph(&self, edges: EdgeSet) -> SpanningSubgraph<'_> {
        SpanningSubgraph {
            parent: self,
            edges,
        }
    }

    /// Connected components of the whole graph.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in &self.edges {
            uf.union(e.ends.0, e.ends.1);
        }
        uf.components()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_loop(&self, e: usize) -> Result<bool, GraphError> {
        Ok(self.edge(e)?.is_loop())
    }

    pub fn is_isthmus(&self, e: usize) -> Result<bool, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        let mut uf = UnionFind::new(self.vertex_count());
        for (i, f) in self.edges.iter().enumerate() {
            if i != e {
                uf.union(f.ends.0, f.ends.1);
            }
        }
        Ok(uf.find(edge.ends.0) != uf.find(edge.ends.1))
    }

    /// Incident edge indices of every vertex; a loop appears twice at its vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.ends.0].push(i);
            inc[e.ends.1].push(i);
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == v) as usize + (e.ends.1 == v) as usize)
            .sum()
    }

    pub fn delete(&self, e: usize) -> Result<Multigraph, GraphError> {
        self.edge(e)?;
        let mut g = self.clone();
        g.edges.remove(e);
        Ok(g)
    }

    /// Identifies the endpoints of `e` and removes it. The merged vertex keeps
    /// the lexicographically smaller of the two ids.
    pub fn contract(&self, e: usize) -> Result<Multigraph, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Err(GraphError::ContractLoop(edge.id.clone()));
        }
        let (a, b) = edge.ends;
        let (keep, gone) = if self.vertices[a] <= self.vertices[b] {
            (a, b)
        } else {
            (b, a)
        };
        let remap = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let mut vertices = self.vertices.clone();
        vertices.remove(gone);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, f)| Edge {
                id: f.id.clone(),
                ends: (remap(f.ends.0), remap(f.ends.1)),
            })
            .collect();
        Ok(Multigraph { vertices, edges })
    }

    /// Same graph with vertices and edges listed in a new order.
    /// `vertex_perm[i]` is the new position of vertex `i`; likewise for edges.
    pub fn reordered(&self, vertex_perm: &[usize], edge_perm: &[usize]) -> Multigraph {
        let mut vertices = vec![String::new(); self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[vertex_perm[i]] = v.clone();
        }
        let mut edges = vec![
            Edge {
                id: String::new(),
                ends: (0, 0)
            };
            self.edges.len()
        ];
        for (i, e) in self.edges.iter().enumerate() {
            edges[edge_perm[i]] = Edge {
                id: e.id.clone(),
                ends: (vertex_perm[e.ends.0], vertex_perm[e.ends.1]),
            };
        }
        Multigraph { vertices, edges }
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "v {v}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "e {} {} {}",
                e.id, self.vertices[e.ends.0], self.vertices[e.ends.1]
            )?;
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut g = Multigraph::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| GraphError::Parse {
                line: lineno + 1,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["v", id] => {
                    g.add_vertex(*id).map_err(|e| parse_err(e.to_string()))?;
                }
                ["e", id, u, v] => {
                    g.add_edge(*id, u, v)
                        .map_err(|e| parse_err(e.to_string()))?;
                }
                _ => return Err(parse_err(format!("cannot parse {line:?}"))),
            }
        }
        Ok(g)
    }
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.sets
    }
}
