//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use tutte_core::activity::{
    embedding_activities, erase_check, motion_function, motion_permutation,
};
use tutte_core::cmap::rotation_systems;
use tutte_core::corpus::{connected_multigraphs, random_rooted_maps, DEFAULT_SEED};
use tutte_core::engines::{
    tutte_deletion_contraction, tutte_embedding_activities, tutte_order_activities,
    tutte_recursive_map, tutte_subgraph_expansion,
};
use tutte_core::mapenum::{enumerate_rooted_maps, partition_function};
use tutte_core::spanning::{spanning_trees, SpanningTree};
use tutte_core::{CombinatorialMap, EdgeOrder, EdgeSet, Multigraph, RootPolicy, TuttePolynomial};

const TORUS: &str = include_str!("../../../data/torus.map");
const K3: &str = include_str!("../../../data/k3.g");
const K4: &str = include_str!("../../../data/k4.g");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: u32, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let pass = o.pass && in_time;
    println!(
        "{} criterion {id}: {title}: {} [{:.3}s, limit {}s]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn poly(s: &str) -> TuttePolynomial {
    s.parse().unwrap()
}

/// Five evaluators on one graph, using the default embedding rooted at 0.
fn all_methods(g: &Multigraph) -> Vec<(&'static str, TuttePolynomial)> {
    let mut out = vec![
        ("expansion", tutte_subgraph_expansion(g).unwrap()),
        ("delcon", tutte_deletion_contraction(g).unwrap()),
        (
            "order",
            tutte_order_activities(g, &EdgeOrder::natural(g.edge_count())).unwrap(),
        ),
    ];
    if g.edge_count() > 0 {
        let m = CombinatorialMap::from_graph(g).unwrap();
        out.push(("embedding", tutte_embedding_activities(&m).unwrap()));
        out.push(("recursive", tutte_recursive_map(&m).unwrap()));
    }
    out
}

fn criterion_1() -> Outcome {
    let g: Multigraph = K3.parse().unwrap();
    let want = poly("x^2 + x + y");
    let results = all_methods(&g);
    let bad: Vec<_> = results.iter().filter(|(_, p)| *p != want).collect();
    outcome(
        bad.is_empty() && results.len() == 5,
        format!(
            "{}/5 evaluators give {want}; mismatches {bad:?}",
            results.len() - bad.len()
        ),
    )
}

fn names(m: &CombinatorialMap, darts: &[usize]) -> Vec<String> {
    darts.iter().map(|&d| m.name(d).to_string()).collect()
}

fn criterion_2() -> Outcome {
    let m: CombinatorialMap = TORUS.parse().unwrap();
    let g = m.underlying_graph().graph;
    let tree_edges: EdgeSet = ["aa'", "bb'", "dd'"]
        .iter()
        .map(|n| m.edge_by_name(n).unwrap())
        .collect();
    let tree = SpanningTree::new(&g, tree_edges).unwrap();
    let tour = motion_function(&m, &tree).unwrap();
    let cycle = names(&m, &tour.cycle());
    let want_cycle: Vec<String> = "a e f c a' f' b c' e' b' d d'"
        .split(' ')
        .map(String::from)
        .collect();
    let edge_order: Vec<String> = tour
        .edge_sequence()
        .into_iter()
        .map(|e| m.edge_label(e))
        .collect();
    let want_edges = ["{a,a'}", "{e,e'}", "{f,f'}", "{c,c'}", "{b,b'}", "{d,d'}"];
    let act = embedding_activities(&m, &tree).unwrap();
    let internal: Vec<String> = act
        .internal_active
        .iter()
        .map(|e| m.edge_label(e))
        .collect();
    let mut problems = Vec::new();
    if cycle != want_cycle {
        problems.push(format!("cycle {cycle:?}"));
    }
    // The half-edge order is the cycle read from the root.
    let by_rank: Vec<String> = {
        let mut v: Vec<usize> = (0..m.dart_count()).collect();
        v.sort_by_key(|&h| tour.half_edge_rank(h));
        names(&m, &v)
    };
    if by_rank != want_cycle {
        problems.push(format!("half-edge order {by_rank:?}"));
    }
    if edge_order != want_edges {
        problems.push(format!("edge order {edge_order:?}"));
    }
    if internal != ["{a,a'}", "{d,d'}"] {
        problems.push(format!("internal actives {internal:?}"));
    }
    if !act.external_active.is_empty() {
        problems.push(format!("external actives {:?}", act.external_active));
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!(
                "tour ({}), edges {}, internal active {}",
                cycle.join(" "),
                edge_order.join("<"),
                internal.join(",")
            )
        } else {
            problems.join("; ")
        },
    )
}

/// Cycles of `perm` as dart-name words, each rotated to start at its
/// smallest name, sorted; `skip` names are erased first.
fn named_cycle_words(m: &CombinatorialMap, perm: &[usize], skip: &[&str]) -> BTreeSet<Vec<String>> {
    let mut seen = vec![false; perm.len()];
    let mut out = BTreeSet::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut word = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            if !skip.contains(&m.name(d)) {
                word.push(m.name(d).to_string());
            }
            d = perm[d];
        }
        if let Some(i) = (0..word.len()).min_by(|&a, &b| word[a].cmp(&word[b])) {
            word.rotate_left(i);
            out.insert(word);
        }
    }
    out
}

fn criterion_3(corpus: &[CombinatorialMap]) -> Outcome {
    let (mut checks, mut failures) = (0u64, 0u64);
    for m in corpus {
        let g = m.underlying_graph().graph;
        for tree in spanning_trees(&g).unwrap() {
            let internal = tree.internal();
            let t = motion_permutation(m, internal);
            for e in 0..m.edge_count() {
                if m.edge_count() == 1 {
                    continue;
                }
                let (minor, minor_internal) = if internal.contains(e) {
                    (
                        m.contract_edge(e, RootPolicy::Drop).unwrap(),
                        internal.without(e).drop_index(e),
                    )
                } else {
                    (
                        m.delete_edge(e, RootPolicy::Drop).unwrap(),
                        internal.drop_index(e),
                    )
                };
                let skip = [m.name(2 * e), m.name(2 * e + 1)];
                let want = named_cycle_words(m, &t, &skip);
                let got =
                    named_cycle_words(&minor, &motion_permutation(&minor, minor_internal), &[]);
                let lib = erase_check(m, &tree, e).unwrap();
                checks += 1;
                if want != got || !lib {
                    failures += 1;
                }
            }
        }
    }
    outcome(
        failures == 0 && checks > 0,
        format!(
            "{} maps, {checks} (tree, edge) checks, {failures} failures",
            corpus.len()
        ),
    )
}

fn criterion_4(corpus: &[CombinatorialMap]) -> Outcome {
    let (mut pairs, mut failures) = (0u64, 0u64);
    for m in corpus {
        let g = m.underlying_graph().graph;
        for tree in spanning_trees(&g).unwrap() {
            pairs += 1;
            let t = motion_permutation(m, tree.internal());
            let single = named_cycle_words(m, &t, &[]).len() == 1;
            if !single || motion_function(m, &tree).is_err() {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0 && pairs > 0,
        format!("{pairs} (map, tree) pairs, {failures} non-cyclic"),
    )
}

fn independence(g: &Multigraph) -> (usize, usize, bool) {
    let want = tutte_subgraph_expansion::<BigInt>(g).unwrap();
    let mut distinct = BTreeSet::new();
    let (mut systems, mut evaluations) = (0, 0);
    for m in rotation_systems(g).unwrap() {
        systems += 1;
        for r in 0..m.dart_count() {
            let p = tutte_embedding_activities::<BigInt>(&m.with_root(Some(r)).unwrap()).unwrap();
            distinct.insert(p.to_string());
            evaluations += 1;
        }
    }
    let ok = distinct.len() == 1 && distinct.contains(&want.to_string());
    (systems, evaluations, ok)
}

fn criterion_5() -> Outcome {
    let k4: Multigraph = K4.parse().unwrap();
    let torus_graph = TORUS
        .parse::<CombinatorialMap>()
        .unwrap()
        .underlying_graph()
        .graph;
    let (s1, e1, ok1) = independence(&k4);
    let (s2, e2, ok2) = independence(&torus_graph);
    outcome(
        ok1 && ok2 && s1 == 16 && e1 == 16 * 12 && s2 == 72 && e2 == 72 * 12,
        format!(
            "K4 {s1} rotation systems, {e1} rooted maps, constant: {ok1}; \
             torus graph {s2} rotation systems, {e2} rooted maps, constant: {ok2}"
        ),
    )
}

fn criterion_6(graphs: &[Multigraph]) -> Outcome {
    let mut failures = Vec::new();
    let mut evaluations = 0;
    for (i, g) in graphs.iter().enumerate() {
        let mut results = all_methods(g);
        let reversed: Vec<usize> = (0..g.edge_count()).rev().collect();
        results.push((
            "order(reversed)",
            tutte_order_activities(
                g,
                &EdgeOrder::from_sequence(&reversed, g.edge_count()).unwrap(),
            )
            .unwrap(),
        ));
        evaluations += results.len();
        if results.windows(2).any(|w| w[0].1 != w[1].1) {
            failures.push(i);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} graphs, {evaluations} evaluations, disagreements at {failures:?}",
            graphs.len()
        ),
    )
}

/// Independent spanning-tree count: edge subsets of size |V|−1 that connect.
fn brute_spanning_trees(g: &Multigraph) -> u64 {
    let n = g.vertex_count();
    let m = g.edge_count();
    (0u64..1 << m)
        .filter(|s| s.count_ones() as usize + 1 == n)
        .filter(|&s| {
            let mut reached = vec![false; n];
            reached[0] = true;
            let mut grew = true;
            while grew {
                grew = false;
                for (e, edge) in g.edges().iter().enumerate() {
                    let (u, v) = edge.ends;
                    if s >> e & 1 == 1 && reached[u] != reached[v] {
                        reached[u] = true;
                        reached[v] = true;
                        grew = true;
                    }
                }
            }
            reached.iter().all(|&r| r)
        })
        .count() as u64
}

fn criterion_7(graphs: &[Multigraph]) -> Outcome {
    let mut failures = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let t = tutte_deletion_contraction::<BigInt>(g).unwrap();
        let trees_ok = t.evaluate_int(1, 1) == BigInt::from(brute_spanning_trees(g));
        let subsets_ok = t.evaluate_int(2, 2) == BigInt::from(1u64 << g.edge_count());
        if !(trees_ok && subsets_ok) {
            failures.push(i);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} graphs, T(1,1) and T(2,2) failures at {failures:?}",
            graphs.len()
        ),
    )
}

/// Rooted planar maps with a spanning tree, counted without the census:
/// labeled σ on `2n` darts (α fixed, root 0) weighted by spanning trees,
/// divided by the `2^(n−1)(n−1)!` relabelings that fix dart 0 and α.
fn tree_rooted_oracle(n: usize) -> u64 {
    let darts = 2 * n;
    let mut sigma: Vec<usize> = (0..darts).collect();
    let mut weighted = 0u64;
    loop {
        let vertex_of = cycle_ids(&sigma);
        let vertices = vertex_of.iter().max().unwrap() + 1;
        let phi: Vec<usize> = (0..darts).map(|d| sigma[d ^ 1]).collect();
        let faces = cycle_ids(&phi).iter().max().unwrap() + 1;
        let edges: Vec<(usize, usize)> = (0..n)
            .map(|e| (vertex_of[2 * e], vertex_of[2 * e + 1]))
            .collect();
        let g = Multigraph::from_edges(vertices, &edges);
        if vertices + faces == n + 2 && g.is_connected() {
            weighted += brute_spanning_trees(&g);
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    let relabelings = (1u64 << (n - 1)) * (1..n as u64).product::<u64>();
    assert_eq!(weighted % relabelings, 0);
    weighted / relabelings
}

fn cycle_ids(perm: &[usize]) -> Vec<usize> {
    let mut id = vec![usize::MAX; perm.len()];
    let mut next = 0;
    for s in 0..perm.len() {
        if id[s] == usize::MAX {
            let mut d = s;
            while id[d] == usize::MAX {
                id[d] = next;
                d = perm[d];
            }
            next += 1;
        }
    }
    id
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

fn criterion_8() -> Outcome {
    let z1 = partition_function::<BigInt>(1, None).unwrap();
    let z1_ok = z1 == poly("x + y");
    let mut rows = Vec::new();
    let mut ok = z1_ok;
    for (n, expected) in [(1usize, 2u64), (2, 10), (3, 70)] {
        let z = partition_function::<BigInt>(n, Some(0)).unwrap();
        let value = z.evaluate_int(1, 1);
        let oracle = tree_rooted_oracle(n);
        ok &= value == BigInt::from(oracle) && oracle == expected;
        rows.push(format!("n={n}: Z(1,1)={value} oracle={oracle}"));
    }
    outcome(ok, format!("Z1 = {z1}; {}", rows.join(", ")))
}

fn criterion_9() -> Outcome {
    let (mut checked, mut violations) = (0, 0);
    for n in 1..=4 {
        for m in enumerate_rooted_maps(n, Some(0)).unwrap().maps {
            if (0..m.edge_count()).any(|e| m.is_loop(e).unwrap()) {
                continue;
            }
            checked += 1;
            let t = tutte_embedding_activities::<BigInt>(&m).unwrap();
            if t.evaluate_int(-3, 0) == BigInt::from(0) {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0 && checked > 0,
        format!("{checked} loopless planar maps, {violations} with T(-3,0) = 0"),
    )
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let maps = random_rooted_maps(500, 6, DEFAULT_SEED);
    let graphs = connected_multigraphs(5, 5);
    let results = [
        run(1, "K3 golden value", secs(1), criterion_1),
        run(2, "six-edge torus map tour", secs(1), criterion_2),
        run(3, "minor tours erase two half-edges", secs(300), || {
            criterion_3(&maps)
        }),
        run(4, "motion function is one cycle", secs(300), || {
            criterion_4(&maps)
        }),
        run(5, "embedding independence", secs(120), criterion_5),
        run(6, "cross-method agreement", secs(300), || {
            criterion_6(&graphs)
        }),
        run(7, "evaluation identities", secs(300), || {
            criterion_7(&graphs)
        }),
        run(8, "partition function", secs(600), criterion_8),
        run(9, "four-colour spot check", secs(60), criterion_9),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
