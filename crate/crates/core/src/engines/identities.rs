//! Counting identities for `T` at small integer points, checked against
//! direct enumeration over edge subsets.

use num_bigint::BigInt;

use crate::bitset::EdgeSet;
use crate::graph::{Multigraph, UnionFind};
use crate::poly::Polynomial;
use crate::spanning::count_spanning_trees;

use super::EngineError;

fn subsets(g: &Multigraph) -> Result<impl Iterator<Item = EdgeSet>, EngineError> {
    g.ensure_bitset_sized()?;
    Ok((0..(1u64 << g.edge_count())).map(EdgeSet::from_bits))
}

fn components_and_cycles(g: &Multigraph, s: EdgeSet) -> (usize, bool) {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut cyclic = false;
    for e in s.iter() {
        let (u, v) = g.edges()[e].ends;
        cyclic |= !uf.union(u, v);
    }
    (uf.components(), cyclic)
}

/// Edge subsets containing no cycle.
pub fn count_acyclic_subsets(g: &Multigraph) -> Result<u64, EngineError> {
    Ok(subsets(g)?
        .filter(|&s| !components_and_cycles(g, s).1)
        .count() as u64)
}

/// Edge subsets whose spanning subgraph is connected.
pub fn count_connected_spanning_subgraphs(g: &Multigraph) -> Result<u64, EngineError> {
    Ok(subsets(g)?
        .filter(|&s| components_and_cycles(g, s).0 == 1)
        .count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub point: (i64, i64),
    pub meaning: &'static str,
    pub polynomial_value: BigInt,
    pub direct_count: BigInt,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.polynomial_value == self.direct_count
    }
}

/// `T(1,1)` spanning trees, `T(2,1)` forests, `T(1,2)` connected spanning
/// subgraphs, `T(2,2) = 2^|E|`.
pub fn evaluation_identities(
    g: &Multigraph,
    t: &Polynomial<BigInt>,
) -> Result<Vec<IdentityCheck>, EngineError> {
    let check = |point: (i64, i64), meaning, direct: u64| IdentityCheck {
        point,
        meaning,
        polynomial_value: t.evaluate_int(point.0, point.1),
        direct_count: BigInt::from(direct),
    };
    Ok(vec![
        check((1, 1), "spanning trees", count_spanning_trees(g)?),
        check((2, 1), "spanning forests", count_acyclic_subsets(g)?),
        check(
            (1, 2),
            "connected spanning subgraphs",
            count_connected_spanning_subgraphs(g)?,
        ),
        check((2, 2), "edge subsets", 1u64 << g.edge_count()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::tutte_subgraph_expansion;

    #[test]
    fn triangle_counts() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(count_acyclic_subsets(&g).unwrap(), 7);
        assert_eq!(count_connected_spanning_subgraphs(&g).unwrap(), 4);
        let t = tutte_subgraph_expansion(&g).unwrap();
        assert!(evaluation_identities(&g, &t)
            .unwrap()
            .iter()
            .all(|c| c.holds()));
    }

    #[test]
    fn wrong_polynomial_is_caught() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let wrong: Polynomial<BigInt> = "x^2 + y".parse().unwrap();
        assert!(evaluation_identities(&g, &wrong)
            .unwrap()
            .iter()
            .any(|c| !c.holds()));
    }
}
