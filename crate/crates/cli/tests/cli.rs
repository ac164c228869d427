use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn steiner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steiner")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&steiner(&all))).unwrap()
}

#[test]
fn analyze_examples() {
    let a = json(&["analyze", "--seed-fixture", "sts15_2"]);
    assert_eq!(a["schema"], 1);
    assert_eq!(a["veblen"], serde_json::json!([0]));
    assert_eq!(a["fano_total"], 7);
    assert_eq!(a["projective"], false);

    let a = json(&["analyze", "--seed-fixture", "pg3"]);
    assert_eq!(a["projective"], true);
    assert_eq!(a["veblen_count"], 15);
    assert_eq!(a["center_order"], 16);

    let a = json(&["analyze", "--seed-fixture", "ag2"]);
    assert_eq!(a["veblen"], serde_json::json!([]));
    assert_eq!(a["pasch_total"], 0);
}

#[test]
fn extend_schreier_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let built = dir.path().join("s.txt");
    let path = built.to_str().unwrap();
    stdout(&steiner(&["extend", "schreier", "--q", "fano", "--t", "1", "--f", "f_sts15_example", "--output", path]));
    let text = fs::read_to_string(&built).unwrap();
    assert!(text.starts_with("# extend schreier"));
    assert!(stdout(&steiner(&["isomorphic", path, "sts15_2"])).starts_with("isomorphic"));
    assert_eq!(json(&["analyze", "--input", path])["veblen"], serde_json::json!([0]));

    let zero = stdout(&steiner(&["extend", "schreier", "--q", "fano", "--t", "1", "--f", "zero"]));
    let zero_path = dir.path().join("zero.txt");
    fs::write(&zero_path, zero).unwrap();
    assert_eq!(json(&["isomorphic", zero_path.to_str().unwrap(), "pg3"])["isomorphic"], true);
}

#[test]
fn extend_double_gives_sts19() {
    let j = json(&["extend", "double", "--n", "sts9_loop_table", "--square", "phi_11"]);
    assert_eq!(j["v"], 19);
    let j = json(&["double", "--n", "sts9_loop_table", "--square", "phi_11"]);
    assert_eq!(j["b"], 57);
}

#[test]
fn extend_operator_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let op = dir.path().join("op.txt");
    // the Schreier operator of the zero factor system over STS(1)
    fs::write(&op, "2 2\n0 1\n1 0\n0 1\n1 0\n0 1\n1 0\n0 1\n1 0\n").unwrap();
    let j = json(&["extend", "operator", "--q", "sts1", "--operator", op.to_str().unwrap()]);
    assert_eq!(j["v"], 3);
}

#[test]
fn classify_examples() {
    let r = json(&["classify", "--q", "fano", "--t", "1"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["total"], 128);
    assert_eq!(r["equivalence_class_count"], 8);
    assert_eq!(r["isomorphism_class_count"], 2);

    let r = json(&["classify", "--q", "sts3", "--t", "1"]);
    assert_eq!(r["isomorphism_class_count"], 1);
    let text = stdout(&steiner(&["classify", "--q", "sts3", "--t", "1"]));
    assert!(text.contains("builds v=7 with 7 Veblen points"));

    assert_eq!(json(&["classify", "--q", "fano", "--t", "0"])["total"], 1);
}

#[test]
fn enumerate_tallies() {
    let r = json(&["enumerate", "--q", "fano", "--t", "1"]);
    assert_eq!(r["total"], 128);
    let tally = r["tally"].as_array().unwrap();
    assert_eq!(tally.len(), 2);
    assert_eq!(tally[1]["count"], 16);
    let lines = stdout(&steiner(&["enumerate", "--q", "sts3", "--t", "2", "--list"]));
    assert_eq!(lines.lines().count(), 4);
}

#[test]
fn catalog_commands() {
    let list = json(&["catalog", "list"]);
    let keys: Vec<&str> = list["fixtures"].as_array().unwrap().iter().map(|f| f["key"].as_str().unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.contains(&"sts13_b"));

    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("phi.txt");
    fs::write(&sq, stdout(&steiner(&["catalog", "show", "phi_11"]))).unwrap();
    let j = json(&["double", "--n", "sts9_loop_table", "--square", sq.to_str().unwrap()]);
    assert_eq!(j["v"], 19);

    let shown = stdout(&steiner(&["catalog", "show", "sts9_loop_table"]));
    let csv = dir.path().join("loop.csv");
    fs::write(&csv, shown).unwrap();
    assert_eq!(json(&["analyze", "--input", csv.to_str().unwrap()])["v"], 9);
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&steiner(&["classify", "--q", "fano", "--t", "1", "--format", "json"]));
    let b = stdout(&steiner(&["classify", "--q", "fano", "--t", "1", "--format", "json"]));
    assert_eq!(a, b);
    let c = Command::new(env!("CARGO_BIN_EXE_steiner"))
        .args(["classify", "--q", "fano", "--t", "1", "--format", "json"])
        .env("STEINER_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(c.stdout).unwrap(), a);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "7 7\n0 1 2\n").unwrap();
    assert_eq!(steiner(&["analyze", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(steiner(&["analyze", "--seed-fixture", "nope"]).status.code(), Some(2));
    assert_eq!(steiner(&["classify", "--q", "sts9_labeled", "--t", "3"]).status.code(), Some(3));
    assert_eq!(steiner(&["analyze", "--seed-fixture", "pg5", "--bound-v", "31"]).status.code(), Some(3));
    assert_eq!(steiner(&["classify", "--q", "fano", "--bound-tb", "0"]).status.code(), Some(2));

    let sq = dir.path().join("sq.txt");
    fs::write(&sq, "W 1 1 1\n1 W 1 1\n1 1 W 1\n1 1 1 W\n").unwrap();
    let out = steiner(&["extend", "double", "--n", "sts3", "--square", sq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}
