//! Embeddings of abstract multigraphs as maps.
//!
//! Edge `i` of the graph becomes darts `2i` (at its first endpoint, named
//! after the edge) and `2i+1` (at the second endpoint, name primed). A
//! rotation system is a cyclic order of the darts at each vertex; a vertex
//! of degree `d` admits `(d-1)!` of them.

use crate::graph::Multigraph;

use super::{CombinatorialMap, Dart, MapError};

fn dart_names(g: &Multigraph) -> Vec<String> {
    g.edges()
        .iter()
        .flat_map(|e| [e.id.clone(), format!("{}'", e.id)])
        .collect()
}

/// Darts around each vertex in increasing order. A loop contributes both darts.
fn darts_at_vertices(g: &Multigraph) -> Vec<Vec<Dart>> {
    let mut at = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        at[e.ends.0].push(2 * i);
        at[e.ends.1].push(2 * i + 1);
    }
    at
}

fn check_embeddable(g: &Multigraph) -> Result<(), MapError> {
    if g.edge_count() == 0 {
        return Err(MapError::NoEdges);
    }
    if !g.is_connected() {
        return Err(MapError::DisconnectedGraph);
    }
    Ok(())
}

fn build(g: &Multigraph, rotations: &[Vec<Dart>], root: Option<Dart>) -> CombinatorialMap {
    let mut sigma = vec![0; 2 * g.edge_count()];
    for rot in rotations {
        for (i, &d) in rot.iter().enumerate() {
            sigma[d] = rot[(i + 1) % rot.len()];
        }
    }
    CombinatorialMap::from_parts_unchecked(dart_names(g), sigma, root)
}

impl CombinatorialMap {
    /// Embedding with the given cyclic order of darts at each vertex.
    /// `rotations[v]` must list exactly the darts at vertex `v`.
    pub fn from_rotations(
        g: &Multigraph,
        rotations: &[Vec<Dart>],
        root: Option<Dart>,
    ) -> Result<CombinatorialMap, MapError> {
        check_embeddable(g)?;
        let expected = darts_at_vertices(g);
        let matches = rotations.len() == expected.len()
            && rotations.iter().zip(&expected).all(|(r, e)| {
                let mut r = r.clone();
                r.sort_unstable();
                r == *e
            });
        if !matches {
            return Err(MapError::Parse(
                "rotations do not list the darts at each vertex".into(),
            ));
        }
        let m = build(g, rotations, None);
        m.with_root(root)
    }

    /// Darts at each vertex of `g` in increasing order, as used by
    /// [`CombinatorialMap::from_rotations`].
    pub fn graph_darts(g: &Multigraph) -> Vec<Vec<Dart>> {
        darts_at_vertices(g)
    }

    /// Embedding whose rotation at each vertex lists incident darts in
    /// increasing order, rooted at dart 0.
    pub fn from_graph(g: &Multigraph) -> Result<CombinatorialMap, MapError> {
        check_embeddable(g)?;
        Ok(build(g, &darts_at_vertices(g), Some(0)))
    }
}

/// `∏_v (deg v − 1)!`, saturating.
pub fn rotation_system_count(g: &Multigraph) -> u128 {
    darts_at_vertices(g)
        .iter()
        .map(|d| (1..d.len().max(1) as u128).product::<u128>())
        .fold(1u128, |a, b| a.saturating_mul(b))
}

/// Every rotation system of a connected graph with at least one edge, each
/// rooted at dart 0. Order is deterministic: an odometer over the
/// per-vertex cyclic orders, last vertex fastest.
pub fn rotation_systems(g: &Multigraph) -> Result<RotationSystems<'_>, MapError> {
    check_embeddable(g)?;
    let per_vertex: Vec<Vec<Vec<Dart>>> = darts_at_vertices(g)
        .into_iter()
        .map(|darts| cyclic_orders(&darts))
        .collect();
    Ok(RotationSystems {
        graph: g,
        choice: vec![0; per_vertex.len()],
        per_vertex,
        done: false,
    })
}

/// All cyclic orders of `darts`, each written starting from `darts[0]`.
fn cyclic_orders(darts: &[Dart]) -> Vec<Vec<Dart>> {
    if darts.len() <= 2 {
        return vec![darts.to_vec()];
    }
    let mut rest = darts[1..].to_vec();
    let mut out = Vec::new();
    permute(&mut rest, 0, &mut |p| {
        let mut v = vec![darts[0]];
        v.extend_from_slice(p);
        out.push(v);
    });
    out.sort();
    out
}

fn permute(v: &mut Vec<Dart>, k: usize, f: &mut impl FnMut(&[Dart])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

pub struct RotationSystems<'g> {
    graph: &'g Multigraph,
    per_vertex: Vec<Vec<Vec<Dart>>>,
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for RotationSystems<'_> {
    type Item = CombinatorialMap;

    fn next(&mut self) -> Option<CombinatorialMap> {
        if self.done {
            return None;
        }
        let rotations: Vec<Vec<Dart>> = self
            .choice
            .iter()
            .zip(&self.per_vertex)
            .map(|(&c, opts)| opts[c].clone())
            .collect();
        let map = build(self.graph, &rotations, Some(0));
        self.done = true;
        for v in (0..self.choice.len()).rev() {
            self.choice[v] += 1;
            if self.choice[v] < self.per_vertex[v].len() {
                self.done = false;
                break;
            }
            self.choice[v] = 0;
        }
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canon::are_isomorphic;
    use std::collections::HashSet;

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn default_embedding_has_the_right_underlying_graph() {
        let g = k4();
        let m = CombinatorialMap::from_graph(&g).unwrap();
        assert!(m.validate().is_ok());
        assert!(are_isomorphic(&m.underlying_graph().graph, &g));
        assert_eq!(m.name(0), "e0");
        assert_eq!(m.name(1), "e0'");
    }

    #[test]
    fn k4_has_sixteen_distinct_rotation_systems() {
        let g = k4();
        assert_eq!(rotation_system_count(&g), 16);
        let maps: Vec<_> = rotation_systems(&g).unwrap().collect();
        assert_eq!(maps.len(), 16);
        let distinct: HashSet<Vec<usize>> = maps.iter().map(|m| m.sigma_slice().to_vec()).collect();
        assert_eq!(distinct.len(), 16);
        for m in &maps {
            assert!(are_isomorphic(&m.underlying_graph().graph, &g));
        }
        // K4 embeds in the plane and on the torus only.
        let genera: HashSet<u32> = maps.iter().map(|m| m.genus()).collect();
        assert_eq!(genera, HashSet::from([0, 1]));
    }

    #[test]
    fn loops_contribute_two_darts() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (0, 1)]);
        // vertex 0 has degree 4: 3! rotations; vertex 1 degree 2: 1.
        assert_eq!(rotation_system_count(&g), 6);
        assert_eq!(rotation_systems(&g).unwrap().count(), 6);
    }

    #[test]
    fn rejects_disconnected_and_edgeless() {
        let two = Multigraph::from_edges(2, &[]);
        assert_eq!(CombinatorialMap::from_graph(&two), Err(MapError::NoEdges));
        let split = Multigraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            CombinatorialMap::from_graph(&split),
            Err(MapError::DisconnectedGraph)
        );
    }
}
