use std::process::{Command, Output};

use serde_json::Value;

fn outerspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_outerspace")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exact_stretch_of_nielsen_automorphism() {
    let v = json(&outerspace(&["stretch", "exact", "--aut", "a->ab; b->b"]));
    assert_eq!(v["lambda"], "7/6");
    assert_eq!(v["command"], "stretch exact");
    assert!(v["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn monte_carlo_is_reproducible() {
    let args = ["stretch", "mc", "--aut", "a->ab; b->b", "--steps", "20000", "--trials", "4", "--seed", "3"];
    let (a, b) = (json(&outerspace(&args)), json(&outerspace(&args)));
    assert_eq!(a, b);
    let est = a["estimate"].as_f64().unwrap();
    assert!((est - 7.0 / 6.0).abs() < 0.05, "{est}");
}

#[test]
fn bad_input_exits_with_1() {
    let out = outerspace(&["stretch", "exact", "--aut", "a->aa; b->b"]);
    assert_eq!(out.status.code(), Some(1));
    let out = outerspace(&["lipschitz", "--from", "rose:1,0", "--to", "rose:1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_cap_exits_with_2() {
    let out = outerspace(&["stretch", "exact", "--aut", "a->abaab; b->aba; c->cdacabcdaaba; d->cdacab", "--cylinder-cap", "10"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn lipschitz_between_roses() {
    let v = json(&outerspace(&["lipschitz", "--from", "rose:1,1", "--to", "rose:1,3"]));
    assert_eq!(v["lambda"], "3");
    assert_eq!(v["witness"], "b");
    assert!((v["dL"].as_f64().unwrap() - (3.0f64 / 2.0).ln()).abs() < 1e-12);
}

#[test]
fn graph_files_and_collapse() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    // a rose with one edge subdivided by a degree two vertex
    let g = r#"{"rank":2,"vertices":[0,1],"edges":[
        {"id":0,"from":0,"to":0,"length":"1/2"},
        {"id":1,"from":0,"to":1,"length":"1/4"},
        {"id":2,"from":1,"to":0,"length":"1/4"}],
        "tree":[1],"labels":{"0":"a","2":"b"}}"#;
    std::fs::write(&path, g).unwrap();
    let p = path.to_str().unwrap();
    let c = json(&outerspace(&["collapse", "--graph", p]));
    assert_eq!(c["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(c["edges"].as_array().unwrap().len(), 2);
    assert_eq!(outerspace(&["entropy", "--tree", p]).status.code(), Some(1));
    let collapsed = dir.path().join("c.json");
    std::fs::write(&collapsed, c.to_string()).unwrap();
    let p = collapsed.to_str().unwrap();
    let v = json(&outerspace(&["lipschitz", "--from", p, "--to", "rose:1/2,1/2"]));
    assert_eq!(v["lambda"], "1");
    let e = json(&outerspace(&["entropy", "--tree", p]));
    assert!(e["entropy"].as_f64().unwrap() > 0.0);
}

#[test]
fn certify_reports_inverse_and_moves() {
    let v = json(&outerspace(&["certify", "--aut", "a->ab; b->b"]));
    assert_eq!(v["inverse"], "a->aB; b->b");
    assert_eq!(v["permutational"], false);
    assert!(!v["certificate"].as_array().unwrap().is_empty());
    let out = outerspace(&["certify", "--aut", "a->ab; b->a; c->cba; d->c"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn uniform_current_weights() {
    let v = json(&outerspace(&["current", "weights", "--current", "uniform:2", "--depth", "2"]));
    assert_eq!(v["flip_invariant"], true);
    assert_eq!(v["switch_consistent"], true);
    assert_eq!(v["level_sums"][0], "2");
    assert_eq!(v["level_sums"][1], "2");
}

#[test]
fn experiment_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = outerspace(&["experiment", "rho-scan", "--rank", "2", "--samples", "5", "--seed", "4", "--out-dir", d]);
    let v = json(&out);
    assert_eq!(v["samples"].as_array().unwrap().len(), 5);
    for ext in ["json", "csv", "svg"] {
        assert!(dir.path().join(format!("rho_scan.{ext}")).exists(), "{ext}");
    }
    let csv = std::fs::read_to_string(dir.path().join("rho_scan.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn paper_suite_subset() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = outerspace(&["experiment", "paper-suite", "--only", "4,12", "--out-dir", d]);
    let v = json(&out);
    assert_eq!(v["passed"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 12 PASS"));
    assert!(dir.path().join("paper_suite.csv").exists());
    let out = outerspace(&["experiment", "paper-suite", "--only", "15"]);
    assert_eq!(out.status.code(), Some(1));
}
