use std::fs;
use std::process::{Command, Output};

use dsmat::exactmat::families::{j_matrix, Vertex3};
use dsmat::{char_poly, rat, tri_to_matrix, ExactMatrix, TriPoint};
use serde_json::Value;

const EXAMPLE: &str = r#"{"n":3,"entries":[["0","2/3","1/3"],["2/3","0","1/3"],["1/3","1/3","1/3"]]}"#;

fn dsmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsmat")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn certify_reads_a_file_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    fs::write(&path, EXAMPLE).unwrap();
    let out = dsmat(&["certify", "--in", path.to_str().unwrap(), "--scope", "sym"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "CertifiedDS");
    assert_eq!(v["certificate"]["basis"], "n3-segment [C,Z] t=1/3");
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed=0 budget=1000"));
}

#[test]
fn refuted_and_malformed_exit_codes() {
    let m = r#"{"n":3,"entries":[["1/4","1/2","1/4"],["1/2","1/4","1/4"],["1/4","1/4","1/2"]]}"#;
    let out = dsmat(&["certify", "--in", m]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    let w = ExactMatrix::from_json_str(&v["witness"]["matrix"].to_string()).unwrap();
    assert_eq!(char_poly(&w), char_poly(&ExactMatrix::from_json_str(m).unwrap()));

    assert_eq!(dsmat(&["certify", "--in", "{not json"]).status.code(), Some(1));
    let not_ds = r#"{"n":2,"entries":[["1","1"],["0","0"]]}"#;
    assert_eq!(dsmat(&["certify", "--in", not_ds]).status.code(), Some(1));
}

#[test]
fn mate_output_round_trips() {
    let m = tri_to_matrix(&TriPoint::from_ratios((1, 2), (1, 2)).unwrap()).unwrap().to_json_string();
    let out = dsmat(&["mate", "--in", &m]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let b = ExactMatrix::from_json_str(&v["matrix"].to_string()).unwrap();
    let want = Vertex3::X.matrix().scale_rational(&rat(1, 2)).add(&j_matrix(3).scale_rational(&rat(1, 2))).unwrap();
    assert_eq!(b, want);
    assert_eq!(v["strategy"], "n3-level-curve");
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("one.json");
    let p2 = dir.path().join("two.json");
    for p in [&p1, &p2] {
        let out = dsmat(&["scan-conjecture", "--n", "3", "--a", "1/2", "--count", "40", "--seed", "9", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["samples"], 40);
    assert_eq!(v["refuted"].as_u64().unwrap() + v["on_segment"].as_u64().unwrap(), 40);
}

#[test]
fn construct_round_trips_and_two_matrix_verbs() {
    let out = dsmat(&["construct", "d", "--n", "3", "--a", "2"]);
    let d = ExactMatrix::from_json_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let want = ExactMatrix::from_ratios(&[&[(2, 3), (1, 6), (1, 6)], &[(1, 6), (2, 3), (1, 6)], &[(1, 6), (1, 6), (2, 3)]]).unwrap();
    assert_eq!(d, want);

    let a = r#"{"n":6,"entries":[["1/2","1/2","0","0","0","0"],["1/2","1/2","0","0","0","0"],["0","0","1/4","1/4","1/4","1/4"],["0","0","1/4","1/4","1/4","1/4"],["0","0","1/4","1/4","1/4","1/4"],["0","0","1/4","1/4","1/4","1/4"]]}"#;
    let b = r#"{"n":6,"entries":[["1/3","1/3","1/3","0","0","0"],["1/3","1/3","1/3","0","0","0"],["1/3","1/3","1/3","0","0","0"],["0","0","0","1/3","1/3","1/3"],["0","0","0","1/3","1/3","1/3"],["0","0","0","1/3","1/3","1/3"]]}"#;
    assert_eq!(stdout_json(&dsmat(&["cospectral", "--in", a, "--in", b]))["cospectral"], true);
    let w = stdout_json(&dsmat(&["permsim", "--in", a, "--in", b]));
    assert_eq!(w["permutation"], Value::Null);
    assert_eq!(dsmat(&["permsim", "--in", a]).status.code(), Some(1));
}

#[test]
fn characterize_and_graphs() {
    let v = stdout_json(&dsmat(&["characterize", "--spectrum", "1,0,-2/3"]));
    assert_eq!(v["conclusion"], "no positive symmetric doubly stochastic realization exists");
    let out = dsmat(&["graphs", "--n", "6", "--k", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,k,g,h,char_poly\n");
    let v = stdout_json(&dsmat(&["graphs", "--n", "8", "--k", "3"]));
    assert_eq!(v["count"], 6);
    let v = stdout_json(&dsmat(&["graphs", "--graph", "C~"]));
    assert_eq!(v["matrix_verdict"]["status"], "CertifiedDS");
}

#[test]
fn plot_data() {
    let out = dsmat(&["plotdata", "triangle", "--grid", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("x,y,f"));
    assert_eq!(text.lines().count(), 1 + 15);
    assert!(text.contains("0.250000000000,0.500000000000,0.062500000000"));
    let v = stdout_json(&dsmat(&["plotdata", "polytope"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 7);
}

#[test]
fn checklist_passes() {
    let out = dsmat(&["verify-paper", "--grid", "61"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
