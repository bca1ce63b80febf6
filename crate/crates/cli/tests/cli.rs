use std::collections::HashSet;
use std::process::{Command, Output};

use serde_json::Value;

fn painted(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_painted")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = painted(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn count_ptera_csv() {
    let o = painted(&["count", "ptera", "--n", "0..9", "--format", "csv"]);
    assert!(o.status.success());
    let values: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(values, ["1", "2", "6", "22", "94", "464", "2652", "17562", "133934", "1162504"]);
}

#[test]
fn count_with_brute_rows() {
    let o = painted(&["count", "stello", "--n", "1..4", "--brute", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with("brute-force")).count(), 4, "{out}");
}

#[test]
fn product_terms() {
    let v = json(&["product", "--family", "binary/binary", "--side", "left", "(..)", "[..]"]);
    let terms: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["basis"].as_str().unwrap()).collect();
    assert_eq!(terms, ["[.[..]]", "[[..].]"]);
    // the one-leaf tree is the unit on the left
    let v = json(&["product", "--family", "Y/Y", "--side", "left", ".", "(.(..))"]);
    assert_eq!(v["terms"][0]["basis"], "(.(..))");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn antipode_and_coproduct() {
    let v = json(&["antipode", "--family", "Y/Y", "--side", "left", "(..)"]);
    assert_eq!(v["terms"][0]["coef"], -1);
    let v = json(&["coproduct", "--family", "C/C", "(...)"]);
    assert!(v["terms"].as_array().unwrap().len() >= 2);
}

#[test]
fn shuffle_term_and_product() {
    let o = painted(&["shuffle-product", "Tub_3(1,2,6,5,3,4)", "Tub_2(1,3,2,4)", "--shuffle", "(1,3,5,2,4)"]);
    assert_eq!(stdout(&o).trim(), "Tub_5(1,2,6,7,9,5,8,3,10,4)");
    let v = json(&["shuffle-product", "Tub_1(1,2)", "Tub_1(1,2)"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_reports_json() {
    let v = json(&["verify", "counts", "--format", "json"]);
    assert_eq!(v["ok"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn bijection_lists_pairs() {
    let v = json(&["bijection", "stella3", "--n", "2", "--format", "json"]);
    assert_eq!(v["report"]["ok"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), v["report"]["size"].as_u64().unwrap() as usize);
}

#[test]
fn tubings_counts() {
    let v = json(&["tubings", "--graph", "complete", "--size", "3", "--maximal", "--format", "json"]);
    assert_eq!(v["count"], 6);
    let v = json(&["tubings", "--graph", "path", "--size", "2", "--marking", "marked", "--format", "json"]);
    assert_eq!(v["count"], 13);
}

#[test]
fn output_is_deterministic() {
    let args = ["poset", "--family", "S/Y", "--degree", "3", "--format", "json", "--workers", "4"];
    let a = painted(&args);
    let b = painted(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = painted(&["poset", "--family", "S/Y", "--degree", "3", "--format", "json", "--workers", "1"]);
    assert_eq!(a.stdout, c.stdout);
}

/// Structural DOT check: header, quoted labels, and every edge between
/// declared nodes.
fn check_dot(s: &str) -> usize {
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("digraph hasse {"));
    assert_eq!(s.lines().last(), Some("}"));
    let mut nodes = HashSet::new();
    let mut edges = 0;
    for l in s.lines().skip(1) {
        let l = l.trim();
        if let Some((a, b)) = l.strip_suffix(';').and_then(|x| x.split_once(" -> ")) {
            assert!(nodes.contains(a) && nodes.contains(b), "{l}");
            edges += 1;
        } else if let Some((id, rest)) = l.split_once(" [label=\"") {
            assert!(rest.ends_with("\"];"), "{l}");
            nodes.insert(id.to_string());
        }
    }
    assert!(!nodes.is_empty());
    edges
}

#[test]
fn export_dot() {
    let o = painted(&["export", "--family", "C/S", "--degree", "2", "--format", "dot"]);
    assert!(o.status.success());
    check_dot(&stdout(&o));
    let o = painted(&["export", "--graph", "path", "--size", "3", "--marking", "composihedron"]);
    check_dot(&stdout(&o));
    let dir = std::env::temp_dir().join(format!("painted-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k3.json");
    let o = painted(&["export", "--graph", "complete", "--size", "3", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 13);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tree_from_json_file() {
    let tree = json(&["enumerate", "--family", "S/C", "--degree", "2", "--format", "json"])["trees"][0]
        .as_str()
        .unwrap()
        .to_string();
    let dir = std::env::temp_dir().join(format!("painted-tree-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let direct = json(&["coproduct", "--family", "S/C", &tree]);
    let parsed = painted_hopf::painted::PaintedTree::parse(painted_hopf::painted::Family::parse("S/C").unwrap(), &tree)
        .unwrap();
    std::fs::write(&path, parsed.to_json().to_string()).unwrap();
    let via_file = json(&["coproduct", "--family", "S/C", &format!("@{}", path.display())]);
    assert_eq!(direct, via_file);
    let o = painted(&["coproduct", "--family", "S/S", &format!("@{}", path.display())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("kind-mismatch"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["count", "ptera", "--n", "9..0"],
        &["poset", "--family", "X/Y", "--degree", "2"],
        &["product", "--family", "S/S", "--side", "left", "(..)1", "(..)1"],
        &["coproduct", "--family", "Y/Y", "(.)"],
        &["tubings", "--graph", "bipartite", "--size", "2"],
        &["verify", "everything"],
        &["count", "ptera", "--format", "dot"],
        &["--workers", "0", "count", "catalan"],
    ] {
        let o = painted(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = painted(&["product", "--family", "S/S", "--side", "left", "(..)1", "(..)1"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[unsupported-structure]"));
}
