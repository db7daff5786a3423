//! Rooted maps with a given number of edges, and the sum of their Tutte
//! polynomials `Z_n(x, y)`.
//!
//! All maps use darts `0..2n` with `α(d) = d ^ 1` and root 0. A σ is kept
//! when it is its own canonical relabeling (see
//! [`CombinatorialMap::canonical_order`]), so each rooted isomorphism class
//! appears exactly once. The scan builds σ one image at a time in label
//! order: `σ(i)` must be an already-reached label or the next fresh edge,
//! and a prefix that stops reaching new labels is disconnected and pruned.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cmap::{CombinatorialMap, Dart};
use crate::engines::{embedding_activity_table, tutte_embedding_activities, EngineError};
use crate::poly::Polynomial;
use crate::scalar::{from_count, Coefficient};

pub const MAX_CENSUS_EDGES: usize = 5;

/// The literal scan visits `(2n)!` permutations.
pub const MAX_SCAN_EDGES: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("edge count must be at least 1")]
    NoEdges,
    #[error("{n} edges exceeds the enumeration bound of {max}")]
    TooManyEdges { n: usize, max: usize },
    #[error("partition function forms disagree: per map {per_map}, per tree {per_tree}")]
    FormsDisagree { per_map: String, per_tree: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCensus {
    pub n_edges: usize,
    pub genus: Option<u32>,
    pub maps: Vec<CombinatorialMap>,
}

impl MapCensus {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// One map per line, single-line text form.
    pub fn to_lines(&self) -> String {
        self.maps.iter().map(|m| m.to_line() + "\n").collect()
    }
}

fn check_bound(n: usize, max: usize) -> Result<(), CensusError> {
    if n == 0 {
        return Err(CensusError::NoEdges);
    }
    if n > max {
        return Err(CensusError::TooManyEdges { n, max });
    }
    Ok(())
}

fn keep(m: &CombinatorialMap, genus: Option<u32>) -> bool {
    genus.is_none_or(|g| m.genus() == g)
}

/// Every rooted map with `n` edges, optionally of one genus, in
/// lexicographic order of σ.
pub fn enumerate_rooted_maps(n: usize, genus: Option<u32>) -> Result<MapCensus, CensusError> {
    check_bound(n, MAX_CENSUS_EDGES)?;
    let mut maps = Vec::new();
    let mut sigma = vec![usize::MAX; 2 * n];
    let mut used = vec![false; 2 * n];
    extend(&mut sigma, &mut used, 0, 2, &mut |s| {
        let m = CombinatorialMap::from_sigma(s.to_vec(), Some(0))
            .expect("construction yields transitive maps");
        debug_assert_eq!(m.canonical_order(0), (0..2 * n).collect::<Vec<_>>());
        if keep(&m, genus) {
            maps.push(m);
        }
    });
    Ok(MapCensus {
        n_edges: n,
        genus,
        maps,
    })
}

/// Chooses `σ(i)` given that labels `0..next` have been reached.
fn extend(
    sigma: &mut [Dart],
    used: &mut [bool],
    i: usize,
    next: usize,
    emit: &mut impl FnMut(&[Dart]),
) {
    let total = sigma.len();
    if i == total {
        emit(sigma);
        return;
    }
    if i >= next {
        return;
    }
    for target in 0..next.min(total) {
        if !used[target] {
            used[target] = true;
            sigma[i] = target;
            extend(sigma, used, i + 1, next, emit);
            used[target] = false;
        }
    }
    if next < total {
        used[next] = true;
        sigma[i] = next;
        extend(sigma, used, i + 1, next + 2, emit);
        used[next] = false;
    }
}

/// Same census by brute force: every permutation of `2n` darts, filtered
/// for transitivity and deduplicated by rooted code. Returns canonical forms
/// sorted by σ.
pub fn enumerate_rooted_maps_by_scan(
    n: usize,
    genus: Option<u32>,
) -> Result<MapCensus, CensusError> {
    check_bound(n, MAX_SCAN_EDGES)?;
    let mut seen = BTreeSet::new();
    let mut perm: Vec<Dart> = (0..2 * n).collect();
    loop {
        if crate::cmap::is_transitive(&perm) {
            let m = CombinatorialMap::from_sigma(perm.clone(), Some(0)).expect("transitive");
            if keep(&m, genus) {
                seen.insert(m.rooted_code(0));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let maps = seen
        .into_iter()
        .map(|code| {
            CombinatorialMap::from_sigma(code.into_iter().map(|d| d as usize).collect(), Some(0))
                .expect("canonical code is a map")
        })
        .collect();
    Ok(MapCensus {
        n_edges: n,
        genus,
        maps,
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `Z_n` summed per map and per (map, tree) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionForms<C: Coefficient> {
    pub per_map: Polynomial<C>,
    pub per_tree: Polynomial<C>,
}

pub fn partition_function_forms<C: Coefficient>(
    census: &MapCensus,
) -> Result<PartitionForms<C>, CensusError> {
    let mut per_map = Polynomial::zero();
    let mut tally: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for m in &census.maps {
        per_map += &tutte_embedding_activities::<C>(m)?;
        for (_, mono) in embedding_activity_table(m)? {
            *tally.entry(mono).or_default() += 1;
        }
    }
    let per_tree =
        Polynomial::from_terms(tally.into_iter().map(|((a, b), k)| (a, b, from_count(k))));
    Ok(PartitionForms { per_map, per_tree })
}

/// `Z_n(x, y)`, after checking that both summation forms agree.
pub fn partition_function<C: Coefficient>(
    n: usize,
    genus: Option<u32>,
) -> Result<Polynomial<C>, CensusError> {
    let census = enumerate_rooted_maps(n, genus)?;
    let forms = partition_function_forms::<C>(&census)?;
    if forms.per_map != forms.per_tree {
        return Err(CensusError::FormsDisagree {
            per_map: forms.per_map.to_string(),
            per_tree: forms.per_tree.to_string(),
        });
    }
    Ok(forms.per_map)
}
