//! Combinatorial maps `(H, σ, α, h₀)`.
//!
//! Half-edges ("darts") are normalized to `0..2m` with `α(2i) = 2i + 1`, so
//! edge `i` is the dart pair `{2i, 2i+1}` and `α` is never stored. The
//! original dart names are kept for display.
//!
//! A constructed [`CombinatorialMap`] is always valid (transitive, with the
//! root inside `H`) except for the distinguished [`terminal`] value: the
//! single vertex with no edges, which minor operations produce when the last
//! edge is removed.
//!
//! [`terminal`]: CombinatorialMap::terminal

mod canon;
mod embed;
mod text;

pub use embed::{rotation_system_count, rotation_systems};

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{Multigraph, UnionFind};

/// Index of a half-edge in a normalized map.
pub type Dart = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map text: {0}")]
    Parse(String),
    #[error("half-edge {0:?} is listed twice in {1}")]
    DuplicateDart(String, &'static str),
    #[error("half-edge {0:?} does not appear in alpha")]
    UnknownDart(String),
    #[error("sigma is not a permutation of the half-edges")]
    NotAPermutation,
    #[error("alpha fixes half-edge {0:?}")]
    AlphaFixedPoint(String),
    #[error("alpha is not an involution at half-edge {0:?}")]
    AlphaNotInvolution(String),
    #[error("sigma and alpha do not act transitively ({orbits} orbits)")]
    NotTransitive { orbits: usize },
    #[error("root {0:?} is not a half-edge of the map")]
    RootNotInMap(String),
    #[error("the map has no half-edges")]
    Empty,
    #[error("map is not rooted")]
    Unrooted,
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("no edge or half-edge named {0:?}")]
    UnknownEdgeName(String),
    #[error("edge {0} is an isthmus and cannot be deleted")]
    DeleteIsthmus(String),
    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(String),
    #[error("edge {0} contains the root; a reroot rule is required")]
    RootOnEdge(String),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("graph has no edges")]
    NoEdges,
}

/// What to do with the root when an edge is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPolicy {
    /// Keep the root; fails with [`MapError::RootOnEdge`] if it is on the edge.
    Keep,
    /// Forget the root.
    Drop,
    /// Move the root to this dart (of the original map, not on the edge).
    MoveTo(Dart),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    names: Vec<String>,
    sigma: Vec<Dart>,
    root: Option<Dart>,
}

/// Underlying graph of a map plus the dart→vertex and dart→edge tables.
#[derive(Debug, Clone)]
pub struct MapGraph {
    pub graph: Multigraph,
    pub dart_vertex: Vec<usize>,
    pub dart_edge: Vec<usize>,
}

/// Checks raw permutations on `0..n` against the map axioms, reporting the
/// first violated one: `sigma` bijective, `alpha` a fixed-point-free
/// involution, transitivity, root membership.
pub fn validate_permutations(
    sigma: &[usize],
    alpha: &[usize],
    root: Option<usize>,
    names: &[String],
) -> Result<(), MapError> {
    let n = sigma.len();
    let name = |d: usize| names.get(d).cloned().unwrap_or_else(|| d.to_string());
    if n == 0 {
        return Err(MapError::Empty);
    }
    if alpha.len() != n || !is_permutation(sigma) {
        return Err(MapError::NotAPermutation);
    }
    for (d, &a) in alpha.iter().enumerate() {
        if a >= n {
            return Err(MapError::NotAPermutation);
        }
        if a == d {
            return Err(MapError::AlphaFixedPoint(name(d)));
        }
        if alpha[a] != d {
            return Err(MapError::AlphaNotInvolution(name(d)));
        }
    }
    let mut uf = UnionFind::new(n);
    for d in 0..n {
        uf.union(d, sigma[d]);
        uf.union(d, alpha[d]);
    }
    if uf.components() != 1 {
        return Err(MapError::NotTransitive {
            orbits: uf.components(),
        });
    }
    if let Some(r) = root {
        if r >= n {
            return Err(MapError::RootNotInMap(name(r)));
        }
    }
    Ok(())
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// True iff `σ` and the normalized `α` act transitively on `0..σ.len()`.
pub fn is_transitive(sigma: &[Dart]) -> bool {
    let mut uf = UnionFind::new(sigma.len());
    for (d, &s) in sigma.iter().enumerate() {
        uf.union(d, s);
        uf.union(d, d ^ 1);
    }
    uf.components() <= 1
}

impl CombinatorialMap {
    /// Map with darts named `0, 1, 2, ...`.
    pub fn from_sigma(sigma: Vec<Dart>, root: Option<Dart>) -> Result<Self, MapError> {
        let names = (0..sigma.len()).map(|d| d.to_string()).collect();
        Self::new(names, sigma, root)
    }

    pub fn new(names: Vec<String>, sigma: Vec<Dart>, root: Option<Dart>) -> Result<Self, MapError> {
        if sigma.len() % 2 == 1 {
            return Err(MapError::AlphaFixedPoint(
                names.last().cloned().unwrap_or_default(),
            ));
        }
        if names.len() != sigma.len() {
            return Err(MapError::NotAPermutation);
        }
        let mut seen = HashSet::new();
        for nm in &names {
            if !seen.insert(nm.as_str()) {
                return Err(MapError::DuplicateDart(nm.clone(), "the map"));
            }
        }
        let alpha: Vec<usize> = (0..sigma.len()).map(|d| d ^ 1).collect();
        validate_permutations(&sigma, &alpha, root, &names)?;
        Ok(CombinatorialMap { names, sigma, root })
    }

    pub(crate) fn from_parts_unchecked(
        names: Vec<String>,
        sigma: Vec<Dart>,
        root: Option<Dart>,
    ) -> Self {
        let m = CombinatorialMap { names, sigma, root };
        debug_assert!(m.is_terminal() || m.validate().is_ok(), "invalid minor");
        m
    }

    /// The single-vertex map with no half-edges.
    pub fn terminal() -> Self {
        CombinatorialMap {
            names: Vec::new(),
            sigma: Vec::new(),
            root: None,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.sigma.is_empty()
    }

    /// Re-checks the map axioms. The terminal map is rejected.
    pub fn validate(&self) -> Result<(), MapError> {
        let alpha: Vec<usize> = (0..self.sigma.len()).map(|d| d ^ 1).collect();
        validate_permutations(&self.sigma, &alpha, self.root, &self.names)
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        d ^ 1
    }

    /// Face permutation `σα`.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[d ^ 1]
    }

    pub fn sigma_slice(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn sigma_inverse(&self) -> Vec<Dart> {
        let mut inv = vec![0; self.sigma.len()];
        for (d, &s) in self.sigma.iter().enumerate() {
            inv[s] = d;
        }
        inv
    }

    pub fn root(&self) -> Option<Dart> {
        self.root
    }

    pub fn require_root(&self) -> Result<Dart, MapError> {
        self.root.ok_or(MapError::Unrooted)
    }

    pub fn with_root(&self, root: Option<Dart>) -> Result<Self, MapError> {
        if let Some(r) = root {
            if r >= self.sigma.len() {
                return Err(MapError::RootNotInMap(r.to_string()));
            }
        }
        Ok(CombinatorialMap {
            root,
            ..self.clone()
        })
    }

    pub fn name(&self, d: Dart) -> &str {
        &self.names[d]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dart_by_name(&self, name: &str) -> Option<Dart> {
        self.names.iter().position(|n| n == name)
    }

    /// Edge name: the names of its two darts, concatenated (`a` + `a'` → `aa'`).
    pub fn edge_name(&self, e: usize) -> String {
        format!("{}{}", self.names[2 * e], self.names[2 * e + 1])
    }

    /// Looks an edge up by [`edge_name`](Self::edge_name), by its dart names
    /// concatenated in reverse order, or by either dart name.
    pub fn edge_by_name(&self, name: &str) -> Result<usize, MapError> {
        (0..self.edge_count())
            .find(|&e| self.edge_name(e) == name)
            .or_else(|| {
                (0..self.edge_count())
                    .find(|&e| format!("{}{}", self.names[2 * e + 1], self.names[2 * e]) == name)
            })
            .or_else(|| self.dart_by_name(name).map(|d| d / 2))
            .ok_or_else(|| MapError::UnknownEdgeName(name.to_string()))
    }

    /// Display form `{a,a'}` of an edge.
    pub fn edge_label(&self, e: usize) -> String {
        format!("{{{},{}}}", self.names[2 * e], self.names[2 * e + 1])
    }

    /// Cycles of a permutation on the darts, each starting at its smallest
    /// dart, ordered by that dart.
    pub fn cycles_of(perm: &[Dart]) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; perm.len()];
        let mut cycles = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = perm[d];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Vertices as σ-cycles.
    pub fn vertex_cycles(&self) -> Vec<Vec<Dart>> {
        Self::cycles_of(&self.sigma)
    }

    /// Faces as σα-cycles.
    pub fn face_cycles(&self) -> Vec<Vec<Dart>> {
        let phi: Vec<Dart> = (0..self.sigma.len()).map(|d| self.phi(d)).collect();
        Self::cycles_of(&phi)
    }

    pub fn vertex_count(&self) -> usize {
        if self.is_terminal() {
            1
        } else {
            self.vertex_cycles().len()
        }
    }

    /// `#cycles(σ) + #cycles(σα) − #cycles(α)`.
    pub fn euler_characteristic(&self) -> i64 {
        if self.is_terminal() {
            return 2;
        }
        self.vertex_cycles().len() as i64 + self.face_cycles().len() as i64
            - self.edge_count() as i64
    }

    pub fn genus(&self) -> u32 {
        ((2 - self.euler_characteristic()) / 2) as u32
    }

    pub fn dart_vertices(&self) -> Vec<usize> {
        let mut vertex = vec![0; self.sigma.len()];
        for (i, cycle) in self.vertex_cycles().iter().enumerate() {
            for &d in cycle {
                vertex[d] = i;
            }
        }
        vertex
    }

    /// One vertex `v{i}` per σ-cycle (in order of smallest dart) and one edge
    /// per α-cycle, in edge-index order and named by [`edge_name`](Self::edge_name).
    pub fn underlying_graph(&self) -> MapGraph {
        let dart_vertex = self.dart_vertices();
        let mut graph = Multigraph::new();
        for v in 0..self.vertex_count() {
            graph.add_vertex(format!("v{v}")).expect("fresh vertex id");
        }
        for e in 0..self.edge_count() {
            let u = format!("v{}", dart_vertex[2 * e]);
            let v = format!("v{}", dart_vertex[2 * e + 1]);
            // Dart names are unique, so a collision can only come from
            // concatenations like "a"+"bc" vs "ab"+"c"; fall back to the index.
            let mut id = self.edge_name(e);
            if graph.edge_index(&id).is_some() {
                id = format!("{id}#{e}");
            }
            graph.add_edge(id, &u, &v).expect("vertices exist");
        }
        MapGraph {
            graph,
            dart_vertex,
            dart_edge: (0..self.sigma.len()).map(|d| d / 2).collect(),
        }
    }

    fn check_edge(&self, e: usize) -> Result<(), MapError> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(MapError::UnknownEdge(e))
        }
    }

    pub fn is_loop(&self, e: usize) -> Result<bool, MapError> {
        self.check_edge(e)?;
        let (h1, h2) = (2 * e, 2 * e + 1);
        let mut d = self.sigma[h1];
        while d != h1 {
            if d == h2 {
                return Ok(true);
            }
            d = self.sigma[d];
        }
        Ok(false)
    }

    pub fn is_isthmus(&self, e: usize) -> Result<bool, MapError> {
        self.check_edge(e)?;
        let mut uf = UnionFind::new(self.sigma.len());
        for d in 0..self.sigma.len() {
            uf.union(d, self.sigma[d]);
            if d / 2 != e {
                uf.union(d, d ^ 1);
            }
        }
        Ok(uf.find(2 * e) != uf.find(2 * e + 1))
    }

    fn resolve_root(&self, e: usize, policy: RootPolicy) -> Result<Option<Dart>, MapError> {
        let on_edge = |d: Dart| d / 2 == e;
        match policy {
            RootPolicy::Drop => Ok(None),
            RootPolicy::Keep => match self.root {
                Some(r) if on_edge(r) => Err(MapError::RootOnEdge(self.edge_label(e))),
                r => Ok(r),
            },
            RootPolicy::MoveTo(d) => {
                if d >= self.sigma.len() || on_edge(d) {
                    Err(MapError::RootNotInMap(
                        self.names.get(d).cloned().unwrap_or_else(|| d.to_string()),
                    ))
                } else {
                    Ok(Some(d))
                }
            }
        }
    }

    /// Removes darts `2e, 2e+1` from a σ' already defined on the survivors.
    fn compact(&self, e: usize, new_sigma: impl Fn(Dart) -> Dart, root: Option<Dart>) -> Self {
        let renumber = |d: Dart| if d > 2 * e + 1 { d - 2 } else { d };
        let (h1, h2) = (2 * e, 2 * e + 1);
        let mut names = Vec::with_capacity(self.sigma.len() - 2);
        let mut sigma = Vec::with_capacity(self.sigma.len() - 2);
        for d in (0..self.sigma.len()).filter(|&d| d != h1 && d != h2) {
            names.push(self.names[d].clone());
            sigma.push(renumber(new_sigma(d)));
        }
        Self::from_parts_unchecked(names, sigma, root.map(renumber))
    }

    /// Embedded deletion of edge `e = {h₁, h₂}`.
    ///
    /// Around each vertex the cyclic order of the surviving half-edges is
    /// preserved: σ' skips over `h₁` and `h₂`.
    pub fn delete_edge(&self, e: usize, policy: RootPolicy) -> Result<Self, MapError> {
        self.check_edge(e)?;
        if self.is_isthmus(e)? {
            return Err(MapError::DeleteIsthmus(self.edge_label(e)));
        }
        let root = self.resolve_root(e, policy)?;
        let s = &self.sigma;
        let (h1, h2) = (2 * e, 2 * e + 1);
        let sigma_del = |h: Dart| {
            let next = s[h];
            if (next == h1 && s[h1] == h2) || (next == h2 && s[h2] == h1) {
                s[s[s[h]]]
            } else if next == h1 || next == h2 {
                s[s[h]]
            } else {
                next
            }
        };
        Ok(self.compact(e, sigma_del, root))
    }

    /// Embedded contraction of edge `e = {h₁, h₂}`: the rotations at the two
    /// endpoints are spliced into one.
    pub fn contract_edge(&self, e: usize, policy: RootPolicy) -> Result<Self, MapError> {
        self.check_edge(e)?;
        if self.is_loop(e)? {
            return Err(MapError::ContractLoop(self.edge_label(e)));
        }
        let root = self.resolve_root(e, policy)?;
        let s = &self.sigma;
        let (h1, h2) = (2 * e, 2 * e + 1);
        let sigma_con = |h: Dart| {
            let next = s[h];
            if (next == h1 && s[h2] == h2) || (next == h2 && s[h1] == h1) {
                s[s[h]]
            } else if next == h1 || next == h2 {
                s[s[h] ^ 1]
            } else {
                next
            }
        };
        Ok(self.compact(e, sigma_con, root))
    }

    /// Relabels edges by `edge_perm` (edge `i` becomes edge `edge_perm[i]`),
    /// swapping the two darts of edge `i` when `flip[i]` is set. This is the
    /// general relabeling that keeps α normalized.
    pub fn relabel(&self, edge_perm: &[usize], flip: &[bool]) -> Self {
        let m = self.edge_count();
        assert_eq!(edge_perm.len(), m);
        assert_eq!(flip.len(), m);
        let pi = |d: Dart| {
            let e = d / 2;
            2 * edge_perm[e] + ((d & 1) ^ flip[e] as usize)
        };
        let mut names = vec![String::new(); 2 * m];
        let mut sigma = vec![0; 2 * m];
        for d in 0..2 * m {
            names[pi(d)] = self.names[d].clone();
            sigma[pi(d)] = pi(self.sigma[d]);
        }
        CombinatorialMap {
            names,
            sigma,
            root: self.root.map(pi),
        }
    }
}
