use serde_json::{json, Value};

use crate::activity::{order_activities, EdgeOrder};
use crate::cmap::CombinatorialMap;
use crate::graph::canon::are_isomorphic;
use crate::graph::Multigraph;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;
use crate::spanning::spanning_trees;

use super::{
    embedding_activity_table, require_connected, tutte_deletion_contraction_with,
    tutte_embedding_activities, tutte_order_activities, tutte_recursive_map,
    tutte_subgraph_expansion, ActivityRow, DelConOptions, EngineError, Method,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodResult<C: Coefficient> {
    pub method: Method,
    /// Which order or embedding was used, e.g. `order#0`, `map#2`.
    pub label: String,
    pub polynomial: Polynomial<C>,
}

/// Activity monomial of every spanning tree under one order or embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityTable {
    pub method: Method,
    pub label: String,
    pub rows: Vec<ActivityRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationReport<C: Coefficient> {
    pub results: Vec<MethodResult<C>>,
    pub tables: Vec<ActivityTable>,
}

impl<C: Coefficient> EvaluationReport<C> {
    pub fn agree(&self) -> bool {
        self.results
            .windows(2)
            .all(|w| w[0].polynomial == w[1].polynomial)
    }

    /// The common polynomial, if all methods agree.
    pub fn polynomial(&self) -> Option<&Polynomial<C>> {
        if self.agree() {
            self.results.first().map(|r| &r.polynomial)
        } else {
            None
        }
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "agree": self.agree(),
            "results": self.results.iter().map(|r| json!({
                "method": r.method.name(),
                "label": r.label,
                "polynomial": r.polynomial.to_string(),
                "terms": r.polynomial.to_json_value(),
            })).collect::<Vec<_>>(),
            "tables": self.tables.iter().map(|t| json!({
                "method": t.method.name(),
                "label": t.label,
                "rows": t.rows.iter().map(|(tree, (i, e))| json!({
                    "tree": tree.iter().collect::<Vec<_>>(),
                    "internal_active": i,
                    "external_active": e,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs every applicable method on `g`: both graph evaluators, Tutte
/// activities under each order, and both map evaluators on each rooted
/// embedding. Each embedding must have `g` as its underlying graph.
pub fn cross_check<C: Coefficient>(
    g: &Multigraph,
    orders: &[EdgeOrder],
    embeddings: &[CombinatorialMap],
) -> Result<EvaluationReport<C>, EngineError> {
    cross_check_with(g, orders, embeddings, DelConOptions::default())
}

pub fn cross_check_with<C: Coefficient>(
    g: &Multigraph,
    orders: &[EdgeOrder],
    embeddings: &[CombinatorialMap],
    delcon: DelConOptions,
) -> Result<EvaluationReport<C>, EngineError> {
    require_connected(g)?;
    for (i, m) in embeddings.iter().enumerate() {
        if m.is_terminal() || !are_isomorphic(&m.underlying_graph().graph, g) {
            return Err(EngineError::EmbeddingMismatch(i));
        }
    }
    let mut results = vec![
        MethodResult {
            method: Method::Expansion,
            label: "graph".into(),
            polynomial: tutte_subgraph_expansion(g)?,
        },
        MethodResult {
            method: Method::DeletionContraction,
            label: "graph".into(),
            polynomial: tutte_deletion_contraction_with(g, delcon)?.0,
        },
    ];
    let mut tables = Vec::new();
    for (i, order) in orders.iter().enumerate() {
        let label = format!("order#{i}");
        let mut rows = Vec::new();
        for t in spanning_trees(g)? {
            rows.push((t.internal(), order_activities(g, order, &t)?.monomial()));
        }
        tables.push(ActivityTable {
            method: Method::OrderActivities,
            label: label.clone(),
            rows,
        });
        results.push(MethodResult {
            method: Method::OrderActivities,
            label,
            polynomial: tutte_order_activities(g, order)?,
        });
    }
    for (i, m) in embeddings.iter().enumerate() {
        let label = format!("map#{i}");
        tables.push(ActivityTable {
            method: Method::EmbeddingActivities,
            label: label.clone(),
            rows: embedding_activity_table(m)?,
        });
        results.push(MethodResult {
            method: Method::EmbeddingActivities,
            label: label.clone(),
            polynomial: tutte_embedding_activities(m)?,
        });
        results.push(MethodResult {
            method: Method::RecursiveMap,
            label,
            polynomial: tutte_recursive_map(m)?,
        });
    }
    Ok(EvaluationReport { results, tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmap::rotation_systems;
    use crate::TuttePolynomial as P;

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn k4_all_methods_agree() {
        let g = k4();
        let orders = vec![
            EdgeOrder::natural(6),
            EdgeOrder::from_sequence(&[5, 3, 1, 0, 2, 4], 6).unwrap(),
        ];
        let maps: Vec<_> = rotation_systems(&g).unwrap().step_by(5).collect();
        let r: EvaluationReport<num_bigint::BigInt> = cross_check(&g, &orders, &maps).unwrap();
        assert!(r.agree());
        assert_eq!(
            r.polynomial().unwrap(),
            &"x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3"
                .parse::<P>()
                .unwrap()
        );
        assert_eq!(r.results.len(), 2 + 2 + 2 * maps.len());
        assert!(r.tables.iter().all(|t| t.rows.len() == 16));
        assert_eq!(r.to_json_value()["agree"], true);
    }

    #[test]
    fn mismatched_embedding_rejected() {
        let tri = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let m = CombinatorialMap::from_graph(&k4()).unwrap();
        assert_eq!(
            cross_check::<i64>(&tri, &[], &[m]),
            Err(EngineError::EmbeddingMismatch(0))
        );
    }

    #[test]
    fn edgeless_graph_uses_graph_methods_only() {
        let pt = Multigraph::from_edges(1, &[]);
        let r: EvaluationReport<i64> = cross_check(&pt, &[EdgeOrder::natural(0)], &[]).unwrap();
        assert!(r.agree());
        assert_eq!(r.polynomial().unwrap(), &Polynomial::one());
    }
}
