//! Spanning-tree activities.
//!
//! Two notions live here. Tutte's activities take a fixed linear order on
//! the edges. Embedding activities take a rooted map instead: the tree
//! determines a motion function `t` on half-edges,
//!
//! ```text
//! t(h) = σ(h)     if h is on an external edge
//! t(h) = σ(α(h))  if h is on an internal edge
//! ```
//!
//! which is one cycle through every half-edge (the tour of the tree).
//! Reading the tour from the root ranks the half-edges; an edge is ranked
//! by the smaller rank of its two half-edges. In both notions an external
//! (internal) edge is active when it is the smallest edge of its
//! fundamental cycle (cocycle).

use thiserror::Error;

use crate::bitset::EdgeSet;
use crate::cmap::{CombinatorialMap, Dart, MapError, RootPolicy};
use crate::graph::Multigraph;
use crate::spanning::{SpanningError, SpanningTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActivityError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error("tree does not belong to the map's underlying graph")]
    TreeMismatch,
    #[error("motion function splits into {cycles} cycles")]
    NonCyclicMotion { cycles: usize },
    #[error("edge order must rank each of the {expected} edges exactly once")]
    NotATotalOrder { expected: usize },
}

impl ActivityError {
    /// True for failures that valid input can never produce.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, ActivityError::NonCyclicMotion { .. })
    }
}

/// Internal and external active edges of one spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ActivitySummary {
    pub internal_active: EdgeSet,
    pub external_active: EdgeSet,
}

impl ActivitySummary {
    /// Exponents `(i(T), e(T))` of the tree's monomial `x^i y^e`.
    pub fn monomial(&self) -> (u32, u32) {
        (
            self.internal_active.len() as u32,
            self.external_active.len() as u32,
        )
    }
}

/// The tour of a spanning tree in a rooted map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourOrder {
    motion: Vec<Dart>,
    half_edge_rank: Vec<usize>,
    edge_rank: Vec<usize>,
    root: Dart,
}

impl TourOrder {
    pub fn motion(&self, h: Dart) -> Dart {
        self.motion[h]
    }

    pub fn half_edge_rank(&self, h: Dart) -> usize {
        self.half_edge_rank[h]
    }

    pub fn edge_rank(&self, e: usize) -> usize {
        self.edge_rank[e]
    }

    pub fn edge_ranks(&self) -> &[usize] {
        &self.edge_rank
    }

    pub fn root(&self) -> Dart {
        self.root
    }

    /// The motion cycle read from the root.
    pub fn cycle(&self) -> Vec<Dart> {
        let mut out = vec![0; self.motion.len()];
        for (h, &r) in self.half_edge_rank.iter().enumerate() {
            out[r] = h;
        }
        out
    }

    /// Edges from smallest to largest.
    pub fn edge_sequence(&self) -> Vec<usize> {
        let mut out = vec![0; self.edge_rank.len()];
        for (e, &r) in self.edge_rank.iter().enumerate() {
            out[r] = e;
        }
        out
    }
}

/// `t` as a permutation, for an arbitrary set of internal edges.
pub fn motion_permutation(map: &CombinatorialMap, internal: EdgeSet) -> Vec<Dart> {
    (0..map.dart_count())
        .map(|h| {
            if internal.contains(h / 2) {
                map.phi(h)
            } else {
                map.sigma(h)
            }
        })
        .collect()
}

fn check_tree(map: &CombinatorialMap, tree: &SpanningTree<'_>) -> Result<(), ActivityError> {
    let g = tree.graph();
    if g.edge_count() != map.edge_count() || g.vertex_count() != map.vertex_count() {
        return Err(ActivityError::TreeMismatch);
    }
    let dart_vertex = map.dart_vertices();
    let same = g.edges().iter().enumerate().all(|(e, edge)| {
        let (a, b) = (dart_vertex[2 * e], dart_vertex[2 * e + 1]);
        (a, b) == edge.ends || (b, a) == edge.ends
    });
    if same {
        Ok(())
    } else {
        Err(ActivityError::TreeMismatch)
    }
}

/// The motion function of `tree` with the induced half-edge and edge ranks.
///
/// `tree` must be a spanning tree of `map.underlying_graph().graph` (edge
/// `i` of that graph is edge `i` of the map). Fails with
/// [`ActivityError::NonCyclicMotion`] if `t` is not a single cycle, which
/// cannot happen for a valid map.
pub fn motion_function(
    map: &CombinatorialMap,
    tree: &SpanningTree<'_>,
) -> Result<TourOrder, ActivityError> {
    let root = map.require_root()?;
    check_tree(map, tree)?;
    let motion = motion_permutation(map, tree.internal());
    let n = motion.len();
    let mut half_edge_rank = vec![usize::MAX; n];
    let mut h = root;
    for r in 0..n {
        if half_edge_rank[h] != usize::MAX {
            break;
        }
        half_edge_rank[h] = r;
        h = motion[h];
    }
    if half_edge_rank.contains(&usize::MAX) {
        return Err(ActivityError::NonCyclicMotion {
            cycles: CombinatorialMap::cycles_of(&motion).len(),
        });
    }
    let edge_rank_raw: Vec<usize> = (0..n / 2)
        .map(|e| half_edge_rank[2 * e].min(half_edge_rank[2 * e + 1]))
        .collect();
    let mut by_rank: Vec<usize> = (0..n / 2).collect();
    by_rank.sort_by_key(|&e| edge_rank_raw[e]);
    let mut edge_rank = vec![0; n / 2];
    for (r, e) in by_rank.into_iter().enumerate() {
        edge_rank[e] = r;
    }
    Ok(TourOrder {
        motion,
        half_edge_rank,
        edge_rank,
        root,
    })
}

/// Activities of `tree` with respect to the edge ranking `rank`.
fn activities_for_ranks(tree: &SpanningTree<'_>, rank: &[usize]) -> ActivitySummary {
    let minimal = |set: EdgeSet, e: usize| set.iter().all(|f| rank[e] <= rank[f]);
    let mut summary = ActivitySummary::default();
    for e in tree.internal().iter() {
        let cocycle = tree.fundamental_cocycle(e).expect("internal edge");
        if minimal(cocycle, e) {
            summary.internal_active.insert(e);
        }
    }
    for e in tree.external().iter() {
        let cycle = tree.fundamental_cycle(e).expect("external edge");
        if minimal(cycle, e) {
            summary.external_active.insert(e);
        }
    }
    summary
}

/// Embedding activities of `tree` in the rooted map.
pub fn embedding_activities(
    map: &CombinatorialMap,
    tree: &SpanningTree<'_>,
) -> Result<ActivitySummary, ActivityError> {
    let tour = motion_function(map, tree)?;
    Ok(activities_for_ranks(tree, &tour.edge_rank))
}

/// A linear order on the edges of a graph, as a rank per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    rank: Vec<usize>,
}

impl EdgeOrder {
    /// Edges in index order.
    pub fn natural(edge_count: usize) -> Self {
        EdgeOrder {
            rank: (0..edge_count).collect(),
        }
    }

    /// `rank[e]` is the position of edge `e`; must be a permutation of `0..m`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self, ActivityError> {
        let m = rank.len();
        let mut seen = vec![false; m];
        for &r in &rank {
            if r >= m || std::mem::replace(&mut seen[r], true) {
                return Err(ActivityError::NotATotalOrder { expected: m });
            }
        }
        Ok(EdgeOrder { rank })
    }

    /// Edges listed from smallest to largest; every edge exactly once.
    pub fn from_sequence(seq: &[usize], edge_count: usize) -> Result<Self, ActivityError> {
        if seq.len() != edge_count {
            return Err(ActivityError::NotATotalOrder {
                expected: edge_count,
            });
        }
        let mut rank = vec![usize::MAX; edge_count];
        for (r, &e) in seq.iter().enumerate() {
            if e >= edge_count || rank[e] != usize::MAX {
                return Err(ActivityError::NotATotalOrder {
                    expected: edge_count,
                });
            }
            rank[e] = r;
        }
        Ok(EdgeOrder { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }
}

/// Tutte's activities of `tree` for a fixed edge order.
pub fn order_activities(
    g: &Multigraph,
    order: &EdgeOrder,
    tree: &SpanningTree<'_>,
) -> Result<ActivitySummary, ActivityError> {
    if order.len() != g.edge_count() {
        return Err(ActivityError::NotATotalOrder {
            expected: g.edge_count(),
        });
    }
    if !std::ptr::eq(tree.graph(), g) && tree.graph() != g {
        return Err(ActivityError::TreeMismatch);
    }
    Ok(activities_for_ranks(tree, &order.rank))
}

/// Checks that removing edge `e` (deleting it if external, contracting it
/// if internal) turns the motion function into the original one with the
/// two half-edges of `e` erased from its cycles.
pub fn erase_check(
    map: &CombinatorialMap,
    tree: &SpanningTree<'_>,
    e: usize,
) -> Result<bool, ActivityError> {
    check_tree(map, tree)?;
    let internal = tree.internal();
    let (minor, minor_internal) = if internal.contains(e) {
        (
            map.contract_edge(e, RootPolicy::Drop)?,
            internal.without(e).drop_index(e),
        )
    } else {
        (
            map.delete_edge(e, RootPolicy::Drop)?,
            internal.drop_index(e),
        )
    };
    let t = motion_permutation(map, internal);
    if minor.is_terminal() {
        return Ok(true);
    }
    let minor_graph = minor.underlying_graph().graph;
    SpanningTree::new(&minor_graph, minor_internal)?;
    let t_minor = motion_permutation(&minor, minor_internal);
    let (h1, h2) = (2 * e, 2 * e + 1);
    let renumber = |d: Dart| if d > h2 { d - 2 } else { d };
    let erased = |mut d: Dart| {
        d = t[d];
        while d == h1 || d == h2 {
            d = t[d];
        }
        d
    };
    Ok((0..map.dart_count())
        .filter(|&h| h != h1 && h != h2)
        .all(|h| t_minor[renumber(h)] == renumber(erased(h))))
}
