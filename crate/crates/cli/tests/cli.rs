use std::path::PathBuf;
use std::process::{Command, Output};

use tutte_core::{CombinatorialMap, Multigraph, TuttePolynomial};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn tutte(args: &[&str]) -> Output {
    tutte_env(args, &[])
}

fn tutte_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tutte"));
    cmd.args(args).env_remove("TUTTE_MEMO_CAPACITY");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn all_methods_on_k3() {
    let o = tutte(&["tutte", "--graph", &data("k3.g"), "--method", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let polys: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with("agree"))
        .map(|l| l.split_once(": ").unwrap().1)
        .collect();
    assert_eq!(polys.len(), 5);
    assert!(polys.iter().all(|p| *p == "x^2 + x + y"));
    assert!(out.ends_with("agree: yes\n"));
}

#[test]
fn single_method_text_and_json() {
    for method in ["expansion", "delcon", "order", "embedding", "recursive"] {
        let o = tutte(&["tutte", "--graph", &data("k4.g"), "--method", method]);
        assert_eq!(o.status.code(), Some(0));
        let p: TuttePolynomial = stdout(&o).trim().parse().unwrap();
        assert_eq!(p.to_string(), "x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3");

        let o = tutte(&[
            "tutte",
            "--graph",
            &data("k4.g"),
            "--method",
            method,
            "--format",
            "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["method"], method);
        let back = TuttePolynomial::from_json(&v["terms"].to_string()).unwrap();
        assert_eq!(back, p);
    }
}

#[test]
fn custom_order_and_root() {
    let o = tutte(&[
        "tutte",
        "--graph",
        &data("k3.g"),
        "--method",
        "order",
        "--order",
        "ca,bc,ab",
    ]);
    assert_eq!(stdout(&o), "x^2 + x + y\n");
    let o = tutte(&[
        "tutte",
        "--graph",
        &data("k3.g"),
        "--method",
        "recursive",
        "--root",
        "bc'",
    ]);
    assert_eq!(stdout(&o), "x^2 + x + y\n");
    let o = tutte(&[
        "tutte",
        "--graph",
        &data("k3.g"),
        "--method",
        "order",
        "--order",
        "ab,ab,bc",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn torus_tour() {
    let o = tutte(&["tour", "--map", &data("torus.map"), "--tree", "aa',bb',dd'"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "cycle: (a e f c a' f' b c' e' b' d d')\n\
         half-edges: a < e < f < c < a' < f' < b < c' < e' < b' < d < d'\n\
         edges: {a,a'} < {e,e'} < {f,f'} < {c,c'} < {b,b'} < {d,d'}\n"
    );
}

#[test]
fn tour_after_contraction() {
    let o = tutte(&["minor", "--map", &data("torus.map"), "--contract", "bb'"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let minor = stdout(&o);
    let parsed: CombinatorialMap = minor.parse().unwrap();
    assert_eq!(parsed.edge_count(), 5);
    let dir = std::env::temp_dir().join(format!("tutte-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("contracted.map");
    std::fs::write(&path, &minor).unwrap();
    let o = tutte(&["tour", "--map", path.to_str().unwrap(), "--tree", "aa',dd'"]);
    assert!(stdout(&o).starts_with("cycle: (a e f c a' f' c' e' d d')\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn minor_errors_name_the_edge() {
    let o = tutte(&["minor", "--map", &data("torus.map"), "--delete", "dd'"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("{d,d'}"), "{}", stderr(&o));
    let o = tutte(&["minor", "--map", &data("torus.map"), "--delete", "qq'"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("qq'"));
    let o = tutte(&["minor", "--map", &data("torus.map")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn euler_and_activities() {
    let o = tutte(&["euler", "--map", &data("torus.map")]);
    assert!(stdout(&o).contains("chi: 0\ngenus: 1\n"));
    let o = tutte(&["activities", "--map", &data("torus.map")]);
    let out = stdout(&o);
    assert!(out.contains(
        "tree: {a,a'} {b,b'} {d,d'}  internal active: {a,a'} {d,d'}  external active: -  monomial: x^2\n"
    ));
    let sum: TuttePolynomial = out
        .lines()
        .last()
        .unwrap()
        .strip_prefix("sum: ")
        .unwrap()
        .parse()
        .unwrap();
    let g: Multigraph =
        "v A\nv B\nv C\nv D\ne a A B\ne b A C\ne c B C\ne d A D\ne e B C\ne f B A\n"
            .parse()
            .unwrap();
    assert_eq!(
        sum,
        tutte_core::engines::tutte_subgraph_expansion(&g).unwrap()
    );
}

#[test]
fn census_lines_round_trip() {
    let o = tutte(&["census", "--edges", "3"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 74);
    for line in out.lines() {
        let m: CombinatorialMap = line.parse().unwrap();
        assert_eq!(m.to_line(), line);
    }
    let o = tutte(&["census", "--edges", "3", "--genus", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 54);
    let o = tutte(&["census", "--edges", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn zpoly_text_and_json() {
    let o = tutte(&["zpoly", "--edges", "1"]);
    assert_eq!(stdout(&o), "x + y\n");
    let o = tutte(&["zpoly", "--edges", "2", "--genus", "0", "--format", "json"]);
    let z = TuttePolynomial::from_json(&stdout(&o)).unwrap();
    assert_eq!(z.evaluate_int(1, 1), 10.into());
}

#[test]
fn check_passes_and_is_deterministic() {
    let a = tutte(&["check", "--graph", &data("theta.g"), "--seed", "7"]);
    let b = tutte(&["check", "--graph", &data("theta.g"), "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("verdict: all checks passed\n"));
    let c = tutte(&["check", "--graph", &data("theta.g"), "--seed", "8"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_one() {
    let o = tutte(&["tutte", "--graph", "/nonexistent.g"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot read"));
    let o = tutte(&["tour", "--map", &data("torus.map"), "--tree", "aa',bb'"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("spanning tree"));
    let o = tutte(&[
        "tour",
        "--map",
        &data("torus.map"),
        "--tree",
        "aa',bb',dd'",
        "--root",
        "zz",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("\"zz\""));
    let o = tutte(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tutte(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn disconnected_graph_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("tutte-cli-split-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("split.g");
    std::fs::write(&path, "v a\nv b\nv c\nv d\ne x a b\ne y c d\n").unwrap();
    let o = tutte(&["tutte", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not connected"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn memo_capacity_from_environment() {
    let args = ["tutte", "--graph", &data("k4.g"), "--method", "delcon"];
    let o = tutte_env(&args, &[("TUTTE_MEMO_CAPACITY", "0")]);
    assert_eq!(stdout(&o), "x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3\n");
    let o = tutte_env(&args, &[("TUTTE_MEMO_CAPACITY", "lots")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("TUTTE_MEMO_CAPACITY"));
}
