//! Isomorphism invariants and isomorphism testing for small multigraphs.
//!
//! [`Certificate`] is a colour-refinement invariant: equal for isomorphic
//! graphs, usually different otherwise. Collisions are settled by
//! [`are_isomorphic`], a backtracking search that respects the refined
//! colours and the edge-multiplicity matrix.

use super::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    vertex_count: usize,
    edge_count: usize,
    colors: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

/// Edge multiplicities; a loop at `v` counts once in `m[v][v]`.
pub fn multiplicity_matrix(g: &Multigraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0u32; n]; n];
    for e in g.edges() {
        let (u, v) = e.ends;
        m[u][v] += 1;
        if u != v {
            m[v][u] += 1;
        }
    }
    m
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut uniq = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    sigs.iter()
        .map(|s| uniq.binary_search(s).expect("present") as u32)
        .collect()
}

/// Stable colouring from iterated degree refinement.
pub fn refined_colors(g: &Multigraph) -> Vec<u32> {
    let m = multiplicity_matrix(g);
    let n = g.vertex_count();
    let initial: Vec<(u32, u32)> = (0..n)
        .map(|v| (m[v][v], m[v].iter().sum::<u32>() - m[v][v]))
        .collect();
    let mut colors = rank(&initial);
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
            .map(|v| {
                let mut nbrs: Vec<(u32, u32)> = (0..n)
                    .filter(|&w| w != v && m[v][w] > 0)
                    .map(|w| (colors[w], m[v][w]))
                    .collect();
                nbrs.sort();
                (colors[v], nbrs)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&c| c as usize + 1)
}

pub fn certificate(g: &Multigraph) -> Certificate {
    let colors = refined_colors(g);
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (colors[e.ends.0], colors[e.ends.1]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut sorted = colors;
    sorted.sort_unstable();
    Certificate {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        colors: sorted,
        edges,
    }
}

/// True iff some vertex bijection preserves every edge multiplicity.
/// Ids are ignored.
pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (ca, cb) = (refined_colors(a), refined_colors(b));
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let (ma, mb) = (multiplicity_matrix(a), multiplicity_matrix(b));
    let n = a.vertex_count();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &ca, &cb, &ma, &mb, &mut image, &mut used)
}

fn extend(
    u: usize,
    ca: &[u32],
    cb: &[u32],
    ma: &[Vec<u32>],
    mb: &[Vec<u32>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if u == ca.len() {
        return true;
    }
    for cand in 0..cb.len() {
        if used[cand] || cb[cand] != ca[u] {
            continue;
        }
        let consistent =
            (0..u).all(|w| ma[u][w] == mb[cand][image[w]]) && ma[u][u] == mb[cand][cand];
        if !consistent {
            continue;
        }
        image[u] = cand;
        used[cand] = true;
        if extend(u + 1, ca, cb, ma, mb, image, used) {
            return true;
        }
        used[cand] = false;
    }
    image[u] = usize::MAX;
    false
}
