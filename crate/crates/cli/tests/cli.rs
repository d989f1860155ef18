use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn sphrig(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphrig")).args(args).env("SPHRIG_OUT_DIR", out_dir).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_str().unwrap().to_string()
}

/// Runs with `--json` and returns (exit code, report).
fn report(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let mut all = args.to_vec();
    all.push("--json");
    let out = sphrig(&all, dir.path());
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[test]
fn genus_zero_six_f_vector() {
    let (code, r) = report(&["complex", "build", "--genus-zero", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["f_vector"]["counts"], serde_json::json!([25, 105, 105]));
}

#[test]
fn reports_carry_required_keys() {
    let (_, r) = report(&["complex", "stats", "--catalog", "petersen"]);
    for key in ["command", "inputs_digest", "status", "checks", "results", "timing_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn k33_does_not_embed_in_petersen() {
    let (code, r) = report(&["nonembed", "--source", "k33", "--target", "petersen"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["verdict"], "no embedding");
}

#[test]
fn embedding_found_exits_one() {
    let (code, r) = report(&["nonembed", "--source", "k13", "--target", "petersen"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
}

#[test]
fn flip_graph_of_six_is_connected() {
    let (code, r) = report(&["pants", "flip-graph", "--s", "6", "--check-connected"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["nodes"], 105);
    assert_eq!(r["results"]["connected"], true);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sphrig(&["complex", "build", "--input", "/nonexistent.json"], dir.path()).status.code(), Some(2));
    assert_eq!(sphrig(&["complex", "build"], dir.path()).status.code(), Some(2));
    assert_eq!(sphrig(&["census", "good-pairs", "--n", "0", "--s", "5"], dir.path()).status.code(), Some(2));
}

#[test]
fn results_are_byte_identical_across_runs() {
    let args = ["rigidity", "verify", "--genus-zero", "5"];
    let (_, a) = report(&args);
    let (_, b) = report(&args);
    assert_eq!(a["results"].to_string(), b["results"].to_string());
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
    let random = ["whitney", "check", "--random", "20", "--seed", "11"];
    assert_eq!(report(&random).1["results"], report(&random).1["results"]);
}

#[test]
fn out_and_dot_land_in_the_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = sphrig(&["catalog", "--name", "petersen", "--out", "r.json", "--dot", "g.dot"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["results"]["complex"]["vertices"].as_array().unwrap().len(), 10);
    assert!(std::fs::read_to_string(dir.path().join("g.dot")).unwrap().starts_with("graph"));
}

#[test]
fn saved_complex_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let out = sphrig(&["complex", "build", "--caterpillar", "2", "--save", "w.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("w.json");
    let (code, r) = report(&["complex", "homology", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["homology"]["betti"][1], 0);
}

#[test]
fn dual_save_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = sphrig(&["pants", "dual", "--s", "6", "--spheres", "1,2;1,2,3;5,6", "--save", "d.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("d.json");
    let (code, r) = report(&["dual", "classify", "--input", path.to_str().unwrap(), "--edges", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["display"], "[(0,4)]");
}

#[test]
fn whitney_triangle_to_star_is_obstructed() {
    let (code, r) = report(&["whitney", "check", "--input", &data("triangle_to_star.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["k3_k13_pair"].as_array().unwrap().len(), 3);
    let (code, r) = report(&["whitney", "lift", "--input", &data("triangle_to_star.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["verdict"], "obstructed");
    let (code, r) = report(&["whitney", "lift", "--input", &data("path_relabeled.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["vertex_map"]["a"], "t");
}

#[test]
fn caterpillar_subcomplex_is_not_rigid() {
    let (code, r) = report(&["rigidity", "verify", "--caterpillar", "2", "--vertices", "z:-1;z:0;w:0;z:1"]);
    assert_eq!(code, 1);
    assert!(r["results"]["certificate"]["counterexample"].is_object());
    let (code, _) = report(&["rigidity", "witness", "--window", "3", "--vertices", "z:-1,z:0,w:0,z:1"]);
    assert_eq!(code, 0);
}

#[test]
fn label_action_and_census() {
    let (code, r) = report(&["rigidity", "aut", "--genus-zero", "5", "--label-action"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["order"], 120);
    let (code, r) = report(&["census", "good-pairs", "--n", "1", "--s", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["count"], 12);
}
