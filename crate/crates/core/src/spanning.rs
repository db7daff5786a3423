//! Spanning trees of a multigraph, and their fundamental cycles and cocycles.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::EdgeSet;
use crate::graph::{GraphError, Multigraph, UnionFind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanningError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge set {0:?} is not a spanning tree")]
    NotATree(EdgeSet),
    #[error("edge {0} is internal to the tree")]
    Internal(usize),
    #[error("edge {0} is external to the tree")]
    External(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A spanning tree of `graph`, as its set of internal edges.
#[derive(Debug, Clone)]
pub struct SpanningTree<'g> {
    graph: &'g Multigraph,
    internal: EdgeSet,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl<'g> SpanningTree<'g> {
    pub fn new(graph: &'g Multigraph, internal: EdgeSet) -> Result<Self, SpanningError> {
        graph.ensure_bitset_sized()?;
        let n = graph.vertex_count();
        let valid = internal.iter().all(|e| e < graph.edge_count()) && internal.len() + 1 == n && {
            let mut uf = UnionFind::new(n);
            internal.iter().all(|e| {
                let (u, v) = graph.edges()[e].ends;
                uf.union(u, v)
            })
        };
        if !valid {
            return Err(SpanningError::NotATree(internal));
        }
        Ok(Self::new_unchecked(graph, internal))
    }

    fn new_unchecked(graph: &'g Multigraph, internal: EdgeSet) -> Self {
        let mut adjacency = vec![Vec::new(); graph.vertex_count()];
        for e in internal.iter() {
            let (u, v) = graph.edges()[e].ends;
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        SpanningTree {
            graph,
            internal,
            adjacency,
        }
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.graph
    }

    pub fn internal(&self) -> EdgeSet {
        self.internal
    }

    pub fn external(&self) -> EdgeSet {
        EdgeSet::from_bits(self.graph.all_edges().bits() & !self.internal.bits())
    }

    pub fn is_internal(&self, e: usize) -> bool {
        self.internal.contains(e)
    }

    /// Edges on the tree path from `from` to `to`.
    fn tree_path(&self, from: usize, to: usize) -> EdgeSet {
        let n = self.graph.vertex_count();
        let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(w, e) in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        let mut path = EdgeSet::EMPTY;
        let mut v = to;
        while let Some((u, e)) = via[v] {
            path.insert(e);
            v = u;
        }
        path
    }

    /// Vertices reachable from `start` in the tree with edge `cut` removed.
    fn side_of(&self, start: usize, cut: usize) -> Vec<bool> {
        let mut side = vec![false; self.graph.vertex_count()];
        side[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(w, e) in &self.adjacency[u] {
                if e != cut && !side[w] {
                    side[w] = true;
                    stack.push(w);
                }
            }
        }
        side
    }

    /// `e` together with the tree path joining its endpoints.
    pub fn fundamental_cycle(&self, e: usize) -> Result<EdgeSet, SpanningError> {
        let edge = self.graph.edge(e)?;
        if self.is_internal(e) {
            return Err(SpanningError::Internal(e));
        }
        Ok(self.tree_path(edge.ends.0, edge.ends.1).with(e))
    }

    /// `e` together with every external edge crossing the cut left by
    /// removing `e` from the tree.
    pub fn fundamental_cocycle(&self, e: usize) -> Result<EdgeSet, SpanningError> {
        let edge = self.graph.edge(e)?;
        if !self.is_internal(e) {
            return Err(SpanningError::External(e));
        }
        let side = self.side_of(edge.ends.0, e);
        let crossing = self
            .external()
            .iter()
            .filter(|&f| {
                let (u, v) = self.graph.edges()[f].ends;
                side[u] != side[v]
            })
            .collect::<EdgeSet>();
        Ok(crossing.with(e))
    }
}

/// Lazily enumerates spanning trees in lexicographic order of their sorted
/// edge-index sets. Loops are never internal; a branch is abandoned as soon
/// as its chosen edges contain a cycle.
pub fn spanning_trees(g: &Multigraph) -> Result<SpanningTrees<'_>, SpanningError> {
    g.ensure_bitset_sized()?;
    if !g.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let candidates: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edges()[e].is_loop())
        .collect();
    Ok(SpanningTrees {
        graph: g,
        target: g.vertex_count().saturating_sub(1),
        candidates,
        stack: vec![Frame {
            next: 0,
            chosen: EdgeSet::EMPTY,
            uf: UnionFind::new(g.vertex_count()),
        }],
    })
}

pub fn count_spanning_trees(g: &Multigraph) -> Result<u64, SpanningError> {
    Ok(spanning_trees(g)?.count() as u64)
}

struct Frame {
    next: usize,
    chosen: EdgeSet,
    uf: UnionFind,
}

pub struct SpanningTrees<'g> {
    graph: &'g Multigraph,
    target: usize,
    candidates: Vec<usize>,
    stack: Vec<Frame>,
}

impl<'g> Iterator for SpanningTrees<'g> {
    type Item = SpanningTree<'g>;

    fn next(&mut self) -> Option<SpanningTree<'g>> {
        loop {
            let top = self.stack.last_mut()?;
            let depth = top.chosen.len();
            if depth == self.target {
                let chosen = top.chosen;
                self.stack.pop();
                return Some(SpanningTree::new_unchecked(self.graph, chosen));
            }
            if self.candidates.len() - top.next < self.target - depth {
                self.stack.pop();
                continue;
            }
            let e = self.candidates[top.next];
            top.next += 1;
            let (u, v) = self.graph.edges()[e].ends;
            let mut uf = top.uf.clone();
            if uf.union(u, v) {
                let chosen = top.chosen.with(e);
                let next = top.next;
                self.stack.push(Frame { next, chosen, uf });
            }
        }
    }
}
