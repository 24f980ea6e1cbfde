use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycyclic")).args(args).env_remove("CHAINRING_CAP").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn analyze_matches_golden() {
    let out = run(&["analyze", "--p", "2", "--t", "4", "--s", "1", "--gens", "u^3*(x-1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("analyze_p2_t4_s1.json"));
}

#[test]
fn census_matches_golden() {
    let out = run(&["census", "--p", "2", "--t", "4", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("census_p2_t4_s1.json"));
}

#[test]
fn sweep_matches_golden() {
    let out = run(&["sweep", "--prop", "4.1", "--p", "2", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("sweep_41_p2_s1.json"));
}

#[test]
fn analyze_profile_and_cardinality() {
    let v = json(&run(&["analyze", "--p", "2", "--t", "4", "--s", "1", "--gens", "u^3*(x-1)"]));
    assert_eq!(v["payload"]["torsion_profile"], serde_json::json!([2, 2, 2, 1]));
    assert_eq!(v["payload"]["card_exponent"], 1);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["timestamps"], Value::Null);

    let unit = json(&run(&["analyze", "--p", "2", "--t", "4", "--s", "1", "--gens", "1"]));
    assert_eq!(unit["payload"]["card_exponent"], 8);
    assert_eq!(unit["payload"]["is_unit"], true);
    let zero = json(&run(&["analyze", "--p", "2", "--t", "4", "--s", "1", "--gens", "0"]));
    assert_eq!(zero["payload"]["is_zero"], true);
    assert_eq!(zero["payload"]["card_exponent"], 0);
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["census", "--p", "3", "--t", "2", "--s", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn timestamps_on_request() {
    let v = json(&run(&["analyze", "--p", "3", "--t", "1", "--s", "1", "--gens", "x-1", "--timestamps"]));
    let ts = &v["timestamps"];
    assert!(ts["started_unix_ms"].as_u64().unwrap() <= ts["finished_unix_ms"].as_u64().unwrap());
}

#[test]
fn chain_ring_census_counts() {
    for (p, s, count) in [("2", "1", 3), ("2", "2", 5), ("3", "1", 4)] {
        let v = json(&run(&["census", "--p", p, "--t", "1", "--s", s]));
        assert_eq!(v["payload"]["ideal_count"], count);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["census", "--p", "3", "--t", "4", "--s", "2"]).status.code(), Some(3));
    assert_eq!(run(&["census", "--p", "2", "--t", "4", "--s", "1", "--cap", "10"]).status.code(), Some(3));
    assert_eq!(run(&["analyze", "--p", "2", "--t", "2", "--s", "1", "--gens", "x+"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--p", "2", "--t", "2", "--s", "1", "--gens", "a"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--p", "4", "--t", "2", "--s", "1", "--gens", "1"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--p", "2", "--t", "1", "--s", "1", "--f", "x^2+1"]).status.code(), Some(2));
    assert_eq!(run(&["sigma", "--p", "3", "--t", "2", "--s", "1", "--lambda", "0", "--gens", "1"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--prop", "4.9", "--p", "2", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--prop", "4.1", "--p", "2", "--s", "2"]).status.code(), Some(0));
    assert_eq!(run(&["sweep", "--prop", "4.2", "--p", "3", "--s", "1"]).status.code(), Some(0));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_polycyclic"))
        .args(["census", "--p", "2", "--t", "2", "--s", "1"])
        .env("CHAINRING_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mismatching_sweep_still_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let js = dir.path().join("sweep.json");
    let csv = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--prop",
        "4.4",
        "--p",
        "3",
        "--s",
        "1",
        "--json",
        js.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    let payload = &v["payload"];
    assert_eq!(payload["mismatches"], 6);
    assert_eq!(payload["uncertified"], 0);
    let total = payload["total"].as_u64().unwrap() as usize;
    let mut rows = csv::Reader::from_path(&csv).unwrap();
    let header = rows.headers().unwrap().clone();
    assert_eq!(&header[0], "b");
    assert_eq!(&header[header.len() - 1], "certified");
    assert_eq!(rows.records().count(), total);
}

#[test]
fn sigma_identity_and_transfer() {
    let id = json(&run(&["sigma", "--p", "3", "--t", "2", "--s", "1", "--lambda", "1", "--gens", "x-1;u"]));
    let code = &id["payload"]["codes"][0];
    assert_eq!(code["generators"], code["images"]);
    assert_eq!(id["payload"]["lambda0"], "1");

    let out = run(&["sigma", "--p", "3", "--t", "2", "--s", "1", "--lambda", "2", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["source_ideals"], 16);
    assert_eq!(v["payload"]["target_ideals"], 16);
    assert_eq!(v["payload"]["distinct_images"], 16);
    assert_eq!(v["payload"]["all_preserved"], true);
}

#[test]
fn general_omega_mode() {
    let v = json(&run(&["analyze", "--p", "2", "--t", "2", "--omega", "x^3+u*x+1", "--gens", "x+1"]));
    assert_eq!(v["payload"]["torsion_profile"], Value::Null);
    assert_eq!(v["ring"]["omega"], "x^3+1+u*x");
    assert_eq!(run(&["census", "--p", "2", "--t", "2", "--omega", "x^3+u*x+1"]).status.code(), Some(0));
}

#[test]
fn census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("census.csv");
    let out = run(&["census", "--p", "2", "--t", "2", "--s", "1", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("kind,key,value\nideal_count,,7\n"));
}
