//! Canonical forms and isomorphism of maps.
//!
//! Rooted maps are rigid: once the root is fixed, a traversal that visits
//! `σ(h)` for each labeled dart `h` (in label order) and labels a newly
//! reached dart together with its `α`-partner determines a unique labeling.
//! The resulting σ, written in the new labels, is the rooted code. Unrooted
//! maps use the smallest rooted code over all roots.

use super::{CombinatorialMap, Dart};

const UNSET: usize = usize::MAX;

impl CombinatorialMap {
    /// Canonical order of darts when rooted at `root`: `order[i]` is the dart
    /// receiving label `i`. Labels `2k, 2k+1` always form an edge.
    pub fn canonical_order(&self, root: Dart) -> Vec<Dart> {
        let n = self.dart_count();
        let mut labelled = vec![false; n];
        let mut order = Vec::with_capacity(n);
        labelled[root] = true;
        labelled[root ^ 1] = true;
        order.push(root);
        order.push(root ^ 1);
        let mut i = 0;
        while i < order.len() {
            let s = self.sigma(order[i]);
            if !labelled[s] {
                labelled[s] = true;
                labelled[s ^ 1] = true;
                order.push(s);
                order.push(s ^ 1);
            }
            i += 1;
        }
        debug_assert_eq!(order.len(), n, "map is not transitive");
        order
    }

    /// σ written in canonical labels for the given root.
    pub fn rooted_code(&self, root: Dart) -> Vec<u32> {
        let order = self.canonical_order(root);
        let mut label = vec![UNSET; order.len()];
        for (i, &d) in order.iter().enumerate() {
            label[d] = i;
        }
        order.iter().map(|&d| label[self.sigma(d)] as u32).collect()
    }

    /// Rooted code at the map's root, or the minimum over all roots when unrooted.
    pub fn canonical_code(&self) -> Vec<u32> {
        if self.is_terminal() {
            return Vec::new();
        }
        match self.root() {
            Some(r) => self.rooted_code(r),
            None => (0..self.dart_count())
                .map(|r| self.rooted_code(r))
                .min()
                .expect("non-empty"),
        }
    }

    /// The same rooted map relabeled canonically: root becomes dart 0.
    /// Dart names follow their darts.
    pub fn canonical_form(&self) -> Result<CombinatorialMap, super::MapError> {
        let root = self.require_root()?;
        let order = self.canonical_order(root);
        let mut label = vec![UNSET; order.len()];
        for (i, &d) in order.iter().enumerate() {
            label[d] = i;
        }
        let names = order.iter().map(|&d| self.name(d).to_string()).collect();
        let sigma = order.iter().map(|&d| label[self.sigma(d)]).collect();
        Ok(CombinatorialMap::from_parts_unchecked(
            names,
            sigma,
            Some(0),
        ))
    }

    /// Map isomorphism; roots must correspond when both maps are rooted.
    pub fn is_isomorphic(&self, other: &CombinatorialMap) -> bool {
        if self.dart_count() != other.dart_count() {
            return false;
        }
        if self.is_terminal() {
            return true;
        }
        match (self.root(), other.root()) {
            (Some(r1), Some(r2)) => self.rooted_code(r1) == other.rooted_code(r2),
            _ => {
                let target = self.rooted_code(self.root().unwrap_or(0));
                (0..other.dart_count()).any(|r| other.rooted_code(r) == target)
            }
        }
    }
}
