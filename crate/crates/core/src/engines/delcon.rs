use std::collections::HashMap;

use crate::graph::canon::{are_isomorphic, certificate, Certificate};
use crate::graph::Multigraph;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

use super::{require_connected, EngineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelConOptions {
    /// Maximum number of memoized minors. 0 disables the memo.
    pub memo_capacity: usize,
}

impl DelConOptions {
    pub const DEFAULT_MEMO_CAPACITY: usize = 100_000;
}

impl Default for DelConOptions {
    fn default() -> Self {
        DelConOptions {
            memo_capacity: Self::DEFAULT_MEMO_CAPACITY,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DelConStats {
    pub calls: u64,
    pub memo_hits: u64,
    pub memo_entries: usize,
}

struct Memo<C> {
    capacity: usize,
    len: usize,
    buckets: HashMap<Certificate, Vec<(Multigraph, Polynomial<C>)>>,
}

impl<C: Coefficient> Memo<C> {
    fn get(&self, cert: &Certificate, g: &Multigraph) -> Option<Polynomial<C>> {
        self.buckets
            .get(cert)?
            .iter()
            .find(|(h, _)| are_isomorphic(g, h))
            .map(|(_, p)| p.clone())
    }

    fn put(&mut self, cert: Certificate, g: Multigraph, p: Polynomial<C>) {
        if self.len < self.capacity {
            self.buckets.entry(cert).or_default().push((g, p));
            self.len += 1;
        }
    }
}

/// Deletion/contraction with default options.
pub fn tutte_deletion_contraction<C: Coefficient>(
    g: &Multigraph,
) -> Result<Polynomial<C>, EngineError> {
    Ok(tutte_deletion_contraction_with(g, DelConOptions::default())?.0)
}

/// `T(G) = y·T(G∖e)` for a loop, `x·T(G/e)` for an isthmus, otherwise
/// `T(G∖e) + T(G/e)`. Minors are memoized up to isomorphism.
pub fn tutte_deletion_contraction_with<C: Coefficient>(
    g: &Multigraph,
    options: DelConOptions,
) -> Result<(Polynomial<C>, DelConStats), EngineError> {
    require_connected(g)?;
    let mut memo = Memo {
        capacity: options.memo_capacity,
        len: 0,
        buckets: HashMap::new(),
    };
    let mut stats = DelConStats::default();
    let p = recurse(g.clone(), &mut memo, &mut stats)?;
    stats.memo_entries = memo.len;
    Ok((p, stats))
}

fn recurse<C: Coefficient>(
    mut g: Multigraph,
    memo: &mut Memo<C>,
    stats: &mut DelConStats,
) -> Result<Polynomial<C>, EngineError> {
    stats.calls += 1;
    let mut loops = 0;
    while let Some(e) = g.edges().iter().position(|e| e.is_loop()) {
        g = g.delete(e)?;
        loops += 1;
    }
    if g.edge_count() == 0 {
        return Ok(Polynomial::one().shift(0, loops));
    }
    let cert = (memo.capacity > 0).then(|| certificate(&g));
    if let Some(c) = &cert {
        if let Some(p) = memo.get(c, &g) {
            stats.memo_hits += 1;
            return Ok(p.shift(0, loops));
        }
    }
    let p = if g.is_isthmus(0)? {
        recurse(g.contract(0)?, memo, stats)?.shift(1, 0)
    } else {
        let deleted = recurse(g.delete(0)?, memo, stats)?;
        let contracted = recurse(g.contract(0)?, memo, stats)?;
        deleted + contracted
    };
    if let Some(c) = cert {
        memo.put(c, g, p.clone());
    }
    Ok(p.shift(0, loops))
}
