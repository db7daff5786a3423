use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tutte_core::activity::{embedding_activities, erase_check, motion_function, ActivityError};
use tutte_core::corpus::random_embedding;
use tutte_core::engines::{
    cross_check_with, evaluation_identities, tutte_deletion_contraction_with,
    tutte_embedding_activities, tutte_order_activities, tutte_recursive_map,
    tutte_subgraph_expansion, DelConOptions, EngineError,
};
use tutte_core::mapenum::{enumerate_rooted_maps, partition_function, CensusError};
use tutte_core::spanning::{spanning_trees, SpanningTree};
use tutte_core::{
    CombinatorialMap, EdgeOrder, EdgeSet, MapError, Method, Multigraph, RootPolicy, TuttePolynomial,
};

use crate::{CensusArgs, Cli, CliError, Command, Format, MethodArg, MinorArgs, Report, MEMO_ENV};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Tutte {
            graph,
            method,
            order,
        } => tutte(cli, graph, *method, order.as_deref()),
        Command::Tour { map, tree } => tour(cli, map, tree),
        Command::Activities { map } => activities(cli, map),
        Command::Minor(args) => minor(cli, args),
        Command::Euler { map } => euler(cli, map),
        Command::Census(args) => census(cli, args),
        Command::Zpoly(args) => zpoly(cli, args),
        Command::Check { graph } => check(cli, graph),
    }
}

fn finish(cli: &Cli, text: String, value: Value, failed: bool) -> Report {
    let body = match cli.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
    };
    Report { body, failed }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    read(path)?
        .parse()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn apply_root(cli: &Cli, m: CombinatorialMap) -> Result<CombinatorialMap> {
    match &cli.root {
        None => Ok(m),
        Some(name) => {
            let d = m.dart_by_name(name).ok_or_else(|| {
                CliError::Input(format!("root {name:?} is not a half-edge of the map"))
            })?;
            m.with_root(Some(d)).map_err(map_err)
        }
    }
}

fn load_map(cli: &Cli, path: &Path) -> Result<CombinatorialMap> {
    let m: CombinatorialMap = read(path)?
        .parse()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    apply_root(cli, m)
}

fn load_rooted_map(cli: &Cli, path: &Path) -> Result<CombinatorialMap> {
    let m = load_map(cli, path)?;
    if m.root().is_none() {
        return Err(CliError::Input(format!(
            "{}: map has no root; add `root:` or pass --root",
            path.display()
        )));
    }
    Ok(m)
}

fn map_err(e: MapError) -> CliError {
    CliError::Input(e.to_string())
}

fn activity_err(e: ActivityError) -> CliError {
    if e.is_invariant_violation() {
        CliError::Invariant(e.to_string())
    } else {
        CliError::Input(e.to_string())
    }
}

fn engine_err(e: EngineError) -> CliError {
    if e.is_invariant_violation() {
        CliError::Invariant(e.to_string())
    } else {
        CliError::Input(e.to_string())
    }
}

fn census_err(e: CensusError) -> CliError {
    match e {
        CensusError::Engine(e) => engine_err(e),
        e @ CensusError::FormsDisagree { .. } => CliError::Invariant(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

fn memo_options() -> Result<DelConOptions> {
    match std::env::var(MEMO_ENV) {
        Err(_) => Ok(DelConOptions::default()),
        Ok(v) => v
            .trim()
            .parse()
            .map(|memo_capacity| DelConOptions { memo_capacity })
            .map_err(|_| {
                CliError::Input(format!(
                    "{MEMO_ENV} must be a non-negative integer, got {v:?}"
                ))
            }),
    }
}

fn poly_json(method: &str, p: &TuttePolynomial) -> Value {
    json!({ "method": method, "polynomial": p.to_string(), "terms": p.to_json_value() })
}

fn edge_order(g: &Multigraph, spec: Option<&str>) -> Result<EdgeOrder> {
    let Some(spec) = spec else {
        return Ok(EdgeOrder::natural(g.edge_count()));
    };
    let seq = spec
        .split(',')
        .map(|t| {
            let t = t.trim();
            g.edge_index(t)
                .ok_or_else(|| CliError::Input(format!("unknown edge id {t:?} in --order")))
        })
        .collect::<Result<Vec<_>>>()?;
    EdgeOrder::from_sequence(&seq, g.edge_count())
        .map_err(|e| CliError::Input(format!("--order: {e}")))
}

/// Default embedding of `g`, with the root override applied.
fn embedding(cli: &Cli, g: &Multigraph) -> Result<CombinatorialMap> {
    let m = CombinatorialMap::from_graph(g).map_err(map_err)?;
    apply_root(cli, m)
}

fn tutte(cli: &Cli, path: &Path, method: MethodArg, order: Option<&str>) -> Result<Report> {
    let g = load_graph(path)?;
    let order = edge_order(&g, order)?;
    let memo = memo_options()?;
    let needs_map = matches!(method, MethodArg::Embedding | MethodArg::Recursive);
    if needs_map && g.edge_count() == 0 {
        return Err(CliError::Input(
            "map-based methods need a graph with at least one edge".into(),
        ));
    }
    let single = |m: Method, p: TuttePolynomial| {
        let text = format!("{p}\n");
        finish(cli, text, poly_json(m.name(), &p), false)
    };
    match method {
        MethodArg::Expansion => Ok(single(
            Method::Expansion,
            tutte_subgraph_expansion(&g).map_err(engine_err)?,
        )),
        MethodArg::Delcon => Ok(single(
            Method::DeletionContraction,
            tutte_deletion_contraction_with(&g, memo)
                .map_err(engine_err)?
                .0,
        )),
        MethodArg::Order => Ok(single(
            Method::OrderActivities,
            tutte_order_activities(&g, &order).map_err(engine_err)?,
        )),
        MethodArg::Embedding => Ok(single(
            Method::EmbeddingActivities,
            tutte_embedding_activities(&embedding(cli, &g)?).map_err(engine_err)?,
        )),
        MethodArg::Recursive => Ok(single(
            Method::RecursiveMap,
            tutte_recursive_map(&embedding(cli, &g)?).map_err(engine_err)?,
        )),
        MethodArg::All => {
            let maps = if g.edge_count() > 0 {
                vec![embedding(cli, &g)?]
            } else {
                Vec::new()
            };
            let report = cross_check_with::<num_bigint::BigInt>(&g, &[order], &maps, memo)
                .map_err(engine_err)?;
            let mut text = String::new();
            for r in &report.results {
                text += &format!("{}: {}\n", r.method, r.polynomial);
            }
            let agree = report.agree();
            text += &format!("agree: {}\n", if agree { "yes" } else { "no" });
            Ok(finish(cli, text, report.to_json_value(), !agree))
        }
    }
}

fn parse_tree<'g>(m: &CombinatorialMap, g: &'g Multigraph, spec: &str) -> Result<SpanningTree<'g>> {
    let mut set = EdgeSet::EMPTY;
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e = m
            .edge_by_name(token)
            .map_err(|_| CliError::Input(format!("--tree: no edge named {token:?}")))?;
        set.insert(e);
    }
    SpanningTree::new(g, set).map_err(|_| {
        CliError::Input(format!(
            "--tree: edges {spec:?} do not form a spanning tree"
        ))
    })
}

fn tour(cli: &Cli, path: &Path, tree: &str) -> Result<Report> {
    let m = load_rooted_map(cli, path)?;
    let g = m.underlying_graph().graph;
    let tree = parse_tree(&m, &g, tree)?;
    let t = motion_function(&m, &tree).map_err(activity_err)?;
    let cycle: Vec<&str> = t.cycle().into_iter().map(|d| m.name(d)).collect();
    let edges: Vec<String> = t
        .edge_sequence()
        .into_iter()
        .map(|e| m.edge_label(e))
        .collect();
    let text = format!(
        "cycle: ({})\nhalf-edges: {}\nedges: {}\n",
        cycle.join(" "),
        cycle.join(" < "),
        edges.join(" < ")
    );
    let value = json!({ "cycle": cycle, "half_edge_order": cycle, "edge_order": edges });
    Ok(finish(cli, text, value, false))
}

fn labels(m: &CombinatorialMap, set: EdgeSet) -> Vec<String> {
    set.iter().map(|e| m.edge_label(e)).collect()
}

fn activities(cli: &Cli, path: &Path) -> Result<Report> {
    let m = load_rooted_map(cli, path)?;
    let g = m.underlying_graph().graph;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut sum = TuttePolynomial::zero();
    for tree in spanning_trees(&g).map_err(|e| CliError::Input(e.to_string()))? {
        let a = embedding_activities(&m, &tree).map_err(activity_err)?;
        let (i, e) = a.monomial();
        let mono = TuttePolynomial::one().shift(i, e);
        let (t, ia, ea) = (
            labels(&m, tree.internal()),
            labels(&m, a.internal_active),
            labels(&m, a.external_active),
        );
        let dash = |v: &[String]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.join(" ")
            }
        };
        text += &format!(
            "tree: {}  internal active: {}  external active: {}  monomial: {mono}\n",
            t.join(" "),
            dash(&ia),
            dash(&ea)
        );
        rows.push(json!({
            "tree": t,
            "internal_active": ia,
            "external_active": ea,
            "monomial": mono.to_string(),
        }));
        sum += &mono;
    }
    text += &format!("sum: {sum}\n");
    let value =
        json!({ "trees": rows, "polynomial": sum.to_string(), "terms": sum.to_json_value() });
    Ok(finish(cli, text, value, false))
}

fn minor(cli: &Cli, args: &MinorArgs) -> Result<Report> {
    let m = load_map(cli, &args.map)?;
    let (name, delete) = match (&args.delete, &args.contract) {
        (Some(n), None) => (n, true),
        (None, Some(n)) => (n, false),
        _ => unreachable!("clap enforces exactly one of --delete/--contract"),
    };
    let e = m.edge_by_name(name).map_err(map_err)?;
    let out = if delete {
        m.delete_edge(e, RootPolicy::Keep)
    } else {
        m.contract_edge(e, RootPolicy::Keep)
    };
    let out = out.map_err(|err| match err {
        MapError::RootOnEdge(_) => CliError::Input(format!(
            "{err}; pass --root to choose a root off edge {name:?}"
        )),
        err => map_err(err),
    })?;
    let value = json!({ "map": out.to_line(), "edges": out.edge_count() });
    Ok(finish(cli, out.to_string(), value, false))
}

fn euler(cli: &Cli, path: &Path) -> Result<Report> {
    let m = load_map(cli, path)?;
    let (v, e, f) = (m.vertex_count(), m.edge_count(), m.face_cycles().len());
    let (chi, genus) = (m.euler_characteristic(), m.genus());
    let text = format!("vertices: {v}\nedges: {e}\nfaces: {f}\nchi: {chi}\ngenus: {genus}\n");
    let value = json!({ "vertices": v, "edges": e, "faces": f, "chi": chi, "genus": genus });
    Ok(finish(cli, text, value, false))
}

fn census(cli: &Cli, args: &CensusArgs) -> Result<Report> {
    let c = enumerate_rooted_maps(args.edges, args.genus).map_err(census_err)?;
    let lines: Vec<String> = c.maps.iter().map(|m| m.to_line()).collect();
    let value = json!({
        "n_edges": c.n_edges,
        "genus": c.genus,
        "count": c.len(),
        "maps": lines,
    });
    Ok(finish(cli, c.to_lines(), value, false))
}

fn zpoly(cli: &Cli, args: &CensusArgs) -> Result<Report> {
    let z: TuttePolynomial = partition_function(args.edges, args.genus).map_err(census_err)?;
    Ok(finish(cli, format!("{z}\n"), z.to_json_value(), false))
}

struct Checks {
    rows: Vec<(String, bool, String)>,
}

impl Checks {
    fn add(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.rows.push((name.into(), ok, detail.into()));
    }
}

/// Every evaluator under several orders and embeddings, the evaluation
/// identities, the deletion/contraction recurrence on each edge, and the
/// tour invariants of each embedding.
fn check(cli: &Cli, path: &Path) -> Result<Report> {
    let g = load_graph(path)?;
    let memo = memo_options()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let m = g.edge_count();
    let mut orders = vec![EdgeOrder::natural(m)];
    let mut seq: Vec<usize> = (0..m).rev().collect();
    orders.push(EdgeOrder::from_sequence(&seq, m).expect("permutation"));
    for _ in 0..2 {
        seq.shuffle(&mut rng);
        orders.push(EdgeOrder::from_sequence(&seq, m).expect("permutation"));
    }
    let mut maps = Vec::new();
    if m > 0 {
        maps.push(embedding(cli, &g)?);
        for _ in 0..3 {
            maps.push(random_embedding(&g, &mut rng).map_err(map_err)?);
        }
    }
    let mut checks = Checks { rows: Vec::new() };

    let report =
        cross_check_with::<num_bigint::BigInt>(&g, &orders, &maps, memo).map_err(engine_err)?;
    let t = report.results[0].polynomial.clone();
    let disagreeing: Vec<String> = report
        .results
        .iter()
        .filter(|r| r.polynomial != t)
        .map(|r| format!("{} {} = {}", r.method, r.label, r.polynomial))
        .collect();
    checks.add(
        "methods agree",
        disagreeing.is_empty(),
        if disagreeing.is_empty() {
            format!("{} evaluations give {t}", report.results.len())
        } else {
            format!("expansion gives {t}; {}", disagreeing.join("; "))
        },
    );

    for c in evaluation_identities(&g, &t).map_err(engine_err)? {
        checks.add(
            format!("T({},{})", c.point.0, c.point.1),
            c.holds(),
            format!("{} vs {} {}", c.polynomial_value, c.direct_count, c.meaning),
        );
    }

    recurrence_checks(&g, &mut checks)?;

    for (i, map) in maps.iter().enumerate() {
        let mg = map.underlying_graph().graph;
        let (mut trees, mut cyclic, mut erasures, mut erased_ok) = (0, 0, 0, 0);
        for tree in spanning_trees(&mg).map_err(|e| CliError::Input(e.to_string()))? {
            trees += 1;
            match motion_function(map, &tree) {
                Ok(_) => cyclic += 1,
                Err(e) if e.is_invariant_violation() => {}
                Err(e) => return Err(activity_err(e)),
            }
            if map.edge_count() > 1 {
                for e in 0..map.edge_count() {
                    erasures += 1;
                    erased_ok += erase_check(map, &tree, e).map_err(activity_err)? as usize;
                }
            }
        }
        let label = format!(
            "map#{i} (genus {}, root {})",
            map.genus(),
            map.name(map.root().unwrap_or(0))
        );
        checks.add(
            format!("tours are single cycles in {label}"),
            cyclic == trees,
            format!("{cyclic}/{trees} trees"),
        );
        checks.add(
            format!("minor tours erase two half-edges in {label}"),
            erased_ok == erasures,
            format!("{erased_ok}/{erasures} (tree, edge) pairs"),
        );
    }

    let failures = checks.rows.iter().filter(|r| !r.1).count();
    let mut text = String::new();
    for (name, ok, detail) in &checks.rows {
        text += &format!("{} {name}: {detail}\n", if *ok { "ok  " } else { "FAIL" });
    }
    text += &if failures == 0 {
        "verdict: all checks passed\n".to_string()
    } else {
        format!("verdict: {failures} checks failed\n")
    };
    let value = json!({
        "ok": failures == 0,
        "polynomial": t.to_string(),
        "checks": checks.rows.iter().map(|(n, ok, d)| json!({"name": n, "ok": ok, "detail": d})).collect::<Vec<_>>(),
    });
    Ok(finish(cli, text, value, failures > 0))
}

/// `T(G) = y T(G∖e)` for loops, `x T(G/e)` for isthmuses, else the sum.
fn recurrence_checks(g: &Multigraph, checks: &mut Checks) -> Result<()> {
    let t = |h: &Multigraph| tutte_subgraph_expansion::<num_bigint::BigInt>(h).map_err(engine_err);
    let whole = t(g)?;
    let graph_err = |e: tutte_core::GraphError| CliError::Input(e.to_string());
    let mut bad = Vec::new();
    for e in 0..g.edge_count() {
        let is_loop = g.is_loop(e).map_err(graph_err)?;
        let rhs = if is_loop {
            t(&g.delete(e).map_err(graph_err)?)?.shift(0, 1)
        } else if g.is_isthmus(e).map_err(graph_err)? {
            t(&g.contract(e).map_err(graph_err)?)?.shift(1, 0)
        } else {
            t(&g.delete(e).map_err(graph_err)?)? + t(&g.contract(e).map_err(graph_err)?)?
        };
        if rhs != whole {
            bad.push(g.edges()[e].id.clone());
        }
    }
    checks.add(
        "deletion/contraction recurrence",
        bad.is_empty(),
        if bad.is_empty() {
            format!("holds at all {} edges", g.edge_count())
        } else {
            format!("fails at edges {}", bad.join(", "))
        },
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_failures_map_to_invariant_exit() {
        let e = activity_err(ActivityError::NonCyclicMotion { cycles: 2 });
        assert!(matches!(e, CliError::Invariant(_)));
        let e = engine_err(EngineError::Invariant("root on pivot".into()));
        assert!(matches!(e, CliError::Invariant(_)));
        let e = engine_err(EngineError::Disconnected);
        assert!(matches!(e, CliError::Input(_)));
        let e = census_err(CensusError::FormsDisagree {
            per_map: "x".into(),
            per_tree: "y".into(),
        });
        assert!(matches!(e, CliError::Invariant(_)));
    }
}
