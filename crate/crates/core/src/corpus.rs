//! Test corpora: small multigraphs up to isomorphism and seeded random maps.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmap::{is_transitive, CombinatorialMap, MapError};
use crate::graph::canon::{are_isomorphic, certificate, Certificate};
use crate::graph::Multigraph;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Every connected multigraph (loops and parallel edges allowed) with at
/// most `max_edges` edges and `max_vertices` vertices, one per isomorphism
/// class. Includes the single vertex with no edges.
pub fn connected_multigraphs(max_edges: usize, max_vertices: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let mut classes: HashMap<Certificate, Vec<usize>> = HashMap::new();
        for m in n - 1..=max_edges {
            let mut chosen = Vec::with_capacity(m);
            multisets(&pairs, m, 0, &mut chosen, &mut |edges| {
                let g = Multigraph::from_edges(n, edges);
                if !g.is_connected() {
                    return;
                }
                let bucket = classes.entry(certificate(&g)).or_default();
                if bucket.iter().all(|&i| !are_isomorphic(&out[i], &g)) {
                    bucket.push(out.len());
                    out.push(g);
                }
            });
        }
    }
    out
}

fn multisets(
    items: &[(usize, usize)],
    k: usize,
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    for i in start..items.len() {
        chosen.push(items[i]);
        multisets(items, k, i, chosen, emit);
        chosen.pop();
    }
}

/// `count` rooted maps with between 1 and `max_edges` edges: uniform σ,
/// rejected unless transitive, uniform root.
pub fn random_rooted_maps(count: usize, max_edges: usize, seed: u64) -> Vec<CombinatorialMap> {
    assert!(max_edges >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=max_edges);
        let mut sigma: Vec<usize> = (0..2 * n).collect();
        sigma.shuffle(&mut rng);
        if !is_transitive(&sigma) {
            continue;
        }
        let root = rng.gen_range(0..2 * n);
        out.push(CombinatorialMap::from_sigma(sigma, Some(root)).expect("transitive"));
    }
    out
}

/// A uniformly random rotation system of `g` with a uniformly random root.
pub fn random_embedding<R: Rng>(g: &Multigraph, rng: &mut R) -> Result<CombinatorialMap, MapError> {
    let mut rotations = CombinatorialMap::graph_darts(g);
    for r in &mut rotations {
        r.shuffle(rng);
    }
    let root = rng.gen_range(0..2 * g.edge_count().max(1));
    CombinatorialMap::from_rotations(g, &rotations, Some(root))
}
