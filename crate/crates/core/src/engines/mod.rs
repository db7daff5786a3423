//! Tutte polynomial evaluators.
//!
//! Five independent routes to `T_G(x, y)`:
//!
//! | method        | input        | idea                                         |
//! |---------------|--------------|----------------------------------------------|
//! | `expansion`   | graph        | sum over all `2^|E|` spanning subgraphs      |
//! | `delcon`      | graph        | memoized deletion/contraction                |
//! | `order`       | graph, order | Tutte activities of spanning trees           |
//! | `embedding`   | rooted map   | embedding activities of spanning trees       |
//! | `recursive`   | rooted map   | deletion/contraction pivoting on `σ⁻¹(root)` |
//!
//! Graph evaluators accept the edgeless single vertex (`T = 1`); map
//! evaluators need at least one edge. Everything rejects disconnected input.

mod delcon;
mod identities;
mod recursive;
mod report;

pub use delcon::{
    tutte_deletion_contraction, tutte_deletion_contraction_with, DelConOptions, DelConStats,
};
pub use identities::{
    count_acyclic_subsets, count_connected_spanning_subgraphs, evaluation_identities, IdentityCheck,
};
pub use recursive::{tutte_recursive_map, tutte_recursive_map_traced, RecursionTrace};
pub use report::{cross_check, cross_check_with, ActivityTable, EvaluationReport, MethodResult};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::activity::{embedding_activities, order_activities, ActivityError, EdgeOrder};
use crate::bitset::EdgeSet;
use crate::cmap::{CombinatorialMap, MapError};
use crate::graph::{GraphError, Multigraph, UnionFind};
use crate::poly::Polynomial;
use crate::scalar::{from_count, Coefficient};
use crate::spanning::{spanning_trees, SpanningError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    NoVertices,
    #[error("map evaluators need at least one edge")]
    NoEdges,
    #[error("embedding #{0} does not have the given graph as underlying graph")]
    EmbeddingMismatch(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Activity(#[from] ActivityError),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
}

impl EngineError {
    pub fn is_invariant_violation(&self) -> bool {
        match self {
            EngineError::Invariant(_) => true,
            EngineError::Activity(a) => a.is_invariant_violation(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Expansion,
    DeletionContraction,
    OrderActivities,
    EmbeddingActivities,
    RecursiveMap,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Expansion,
        Method::DeletionContraction,
        Method::OrderActivities,
        Method::EmbeddingActivities,
        Method::RecursiveMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Expansion => "expansion",
            Method::DeletionContraction => "delcon",
            Method::OrderActivities => "order",
            Method::EmbeddingActivities => "embedding",
            Method::RecursiveMap => "recursive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

fn require_connected(g: &Multigraph) -> Result<(), EngineError> {
    if g.vertex_count() == 0 {
        return Err(EngineError::NoVertices);
    }
    if !g.is_connected() {
        return Err(EngineError::Disconnected);
    }
    Ok(())
}

fn require_map(m: &CombinatorialMap) -> Result<(), EngineError> {
    if m.is_terminal() {
        return Err(EngineError::NoEdges);
    }
    m.validate()?;
    m.require_root()?;
    Ok(())
}

/// Σ count · x^a y^b from a monomial tally.
fn from_tally<C: Coefficient>(tally: BTreeMap<(u32, u32), u64>) -> Polynomial<C> {
    Polynomial::from_terms(
        tally
            .into_iter()
            .map(|((a, b), n)| (a, b, from_count::<C>(n))),
    )
}

/// `Σ_{S⊆E} (x−1)^{c(S)−c(G)} (y−1)^{c(S)+|S|−|V|}`.
pub fn tutte_subgraph_expansion<C: Coefficient>(
    g: &Multigraph,
) -> Result<Polynomial<C>, EngineError> {
    require_connected(g)?;
    g.ensure_bitset_sized()?;
    let m = g.edge_count();
    let n = g.vertex_count();
    // Tally by exponent pair first; expand each (x−1)^a (y−1)^b once.
    let mut tally: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for bits in 0..(1u64 << m) {
        let mut uf = UnionFind::new(n);
        for e in EdgeSet::from_bits(bits).iter() {
            let (u, v) = g.edges()[e].ends;
            uf.union(u, v);
        }
        let c = uf.components();
        let size = bits.count_ones() as usize;
        let key = ((c - 1) as u32, (c + size - n) as u32);
        *tally.entry(key).or_default() += 1;
    }
    let xm1 = &Polynomial::<C>::x() - &Polynomial::one();
    let ym1 = &Polynomial::<C>::y() - &Polynomial::one();
    let mut out = Polynomial::zero();
    for ((a, b), count) in tally {
        let term = &xm1.pow(a) * &ym1.pow(b);
        out += &term.scale(&from_count(count));
    }
    Ok(out)
}

/// `Σ_T x^{i(T)} y^{e(T)}` for Tutte's activities under `order`.
pub fn tutte_order_activities<C: Coefficient>(
    g: &Multigraph,
    order: &EdgeOrder,
) -> Result<Polynomial<C>, EngineError> {
    require_connected(g)?;
    let mut tally = BTreeMap::new();
    for t in spanning_trees(g)? {
        *tally
            .entry(order_activities(g, order, &t)?.monomial())
            .or_insert(0u64) += 1;
    }
    Ok(from_tally(tally))
}

/// A spanning tree and the exponents of its activity monomial.
pub type ActivityRow = (EdgeSet, (u32, u32));

/// Per-tree monomials for embedding activities, in tree enumeration order.
pub fn embedding_activity_table(m: &CombinatorialMap) -> Result<Vec<ActivityRow>, EngineError> {
    require_map(m)?;
    let g = m.underlying_graph().graph;
    let mut rows = Vec::new();
    for t in spanning_trees(&g)? {
        rows.push((t.internal(), embedding_activities(m, &t)?.monomial()));
    }
    Ok(rows)
}

/// `Σ_T x^{I(T)} y^{E(T)}` for embedding activities in the rooted map.
pub fn tutte_embedding_activities<C: Coefficient>(
    m: &CombinatorialMap,
) -> Result<Polynomial<C>, EngineError> {
    let mut tally = BTreeMap::new();
    for (_, mono) in embedding_activity_table(m)? {
        *tally.entry(mono).or_insert(0u64) += 1;
    }
    Ok(from_tally(tally))
}
