use crate::cmap::{CombinatorialMap, RootPolicy};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

use super::{require_map, EngineError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecursionTrace {
    pub calls: u64,
    /// Deepest call, counting the top-level call as depth 1.
    pub max_depth: usize,
    /// Isthmus steps where the root was on the pivot edge.
    pub isthmus_reroots: u64,
    /// Loop steps where the root was on the pivot edge.
    pub loop_reroots: u64,
}

pub fn tutte_recursive_map<C: Coefficient>(
    m: &CombinatorialMap,
) -> Result<Polynomial<C>, EngineError> {
    Ok(tutte_recursive_map_traced(m)?.0)
}

/// Deletion/contraction on the edge `e*` carrying `h* = σ⁻¹(root)`.
///
/// With `h*'` the other dart of `e*`:
/// - ordinary `e*`: `T(m/e*) + T(m∖e*)`, root unchanged (never on `e*`);
/// - isthmus: `x·T(m/e*)`, root moves to `σ(h*')` when it is `h*`;
/// - loop: `y·T(m∖e*)`, root moves to `σ(root)` when it is `h*'`.
///
/// Each call removes one edge, so the depth equals `|E|`.
pub fn tutte_recursive_map_traced<C: Coefficient>(
    m: &CombinatorialMap,
) -> Result<(Polynomial<C>, RecursionTrace), EngineError> {
    require_map(m)?;
    let mut trace = RecursionTrace::default();
    let p = recurse(m, 1, &mut trace)?;
    Ok((p, trace))
}

fn recurse<C: Coefficient>(
    m: &CombinatorialMap,
    depth: usize,
    trace: &mut RecursionTrace,
) -> Result<Polynomial<C>, EngineError> {
    trace.calls += 1;
    trace.max_depth = trace.max_depth.max(depth);
    let h0 = m.require_root()?;
    let h_star = m.sigma_inverse()[h0];
    let h_star_mate = m.alpha(h_star);
    let e = h_star / 2;
    let is_loop = m.is_loop(e)?;
    if m.edge_count() == 1 {
        return Ok(if is_loop {
            Polynomial::y()
        } else {
            Polynomial::x()
        });
    }
    if is_loop {
        let policy = if h0 == h_star_mate {
            trace.loop_reroots += 1;
            RootPolicy::MoveTo(m.sigma(h0))
        } else {
            RootPolicy::Keep
        };
        let minor = m.delete_edge(e, policy).map_err(invariant)?;
        return Ok(recurse(&minor, depth + 1, trace)?.shift(0, 1));
    }
    if m.is_isthmus(e)? {
        let policy = if h0 == h_star {
            trace.isthmus_reroots += 1;
            RootPolicy::MoveTo(m.sigma(h_star_mate))
        } else {
            RootPolicy::Keep
        };
        let minor = m.contract_edge(e, policy).map_err(invariant)?;
        return Ok(recurse(&minor, depth + 1, trace)?.shift(1, 0));
    }
    if h0 / 2 == e {
        return Err(EngineError::Invariant(format!(
            "root {} lies on ordinary pivot edge {}",
            m.name(h0),
            m.edge_label(e)
        )));
    }
    let contracted = m.contract_edge(e, RootPolicy::Keep).map_err(invariant)?;
    let deleted = m.delete_edge(e, RootPolicy::Keep).map_err(invariant)?;
    let a = recurse(&contracted, depth + 1, trace)?;
    let b = recurse(&deleted, depth + 1, trace)?;
    Ok(a + b)
}

fn invariant(e: crate::cmap::MapError) -> EngineError {
    EngineError::Invariant(format!("minor step failed: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmap::tests::{torus, single_isthmus, single_loop, triangle};
    use crate::engines::tutte_subgraph_expansion;
    use crate::TuttePolynomial as P;

    #[test]
    fn base_cases() {
        assert_eq!(
            tutte_recursive_map::<i64>(&single_loop())
                .unwrap()
                .to_string(),
            "y"
        );
        assert_eq!(
            tutte_recursive_map::<i64>(&single_isthmus())
                .unwrap()
                .to_string(),
            "x"
        );
        assert_eq!(
            tutte_recursive_map::<i64>(&CombinatorialMap::terminal()),
            Err(EngineError::NoEdges)
        );
    }

    #[test]
    fn torus_matches_expansion_from_every_root() {
        let m = torus();
        let g = m.underlying_graph().graph;
        let want: P = tutte_subgraph_expansion(&g).unwrap();
        for r in 0..m.dart_count() {
            let (p, t) =
                tutte_recursive_map_traced::<num_bigint::BigInt>(&m.with_root(Some(r)).unwrap())
                    .unwrap();
            assert_eq!(p, want, "root {}", m.name(r));
            assert_eq!(t.max_depth, m.edge_count());
        }
    }

    #[test]
    fn triangle_every_root() {
        let m = triangle();
        for r in 0..6 {
            let p: P = tutte_recursive_map(&m.with_root(Some(r)).unwrap()).unwrap();
            assert_eq!(p.to_string(), "x^2 + x + y");
        }
    }

    #[test]
    fn unrooted_rejected() {
        let m = torus().with_root(None).unwrap();
        assert!(matches!(
            tutte_recursive_map::<i64>(&m),
            Err(EngineError::Map(_))
        ));
    }
}
