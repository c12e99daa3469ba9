use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn qcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcover")).args(args).env_remove("QCOVER_CAP").output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

#[test]
fn run_theta_and_casimir_on_rank_one() {
    let out = qcover(&["run", "--datum", &data("b01.json"), "--suites", "theta,casimir", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = lines(&out);
    assert!(!recs.is_empty());
    for r in &recs {
        for key in ["suite", "anchor", "params", "pass", "millis", "seed"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
    }
    // theta records come before casimir records
    let first_casimir = recs.iter().position(|r| r["suite"] == "casimir").unwrap();
    assert!(recs[..first_casimir].iter().all(|r| r["suite"] == "theta"));
    assert!(recs[first_casimir..].iter().all(|r| r["suite"] == "casimir"));
}

#[test]
fn invalid_datum_exits_two_naming_the_condition() {
    let out = qcover(&["check-datum", "--datum", &fixture("odd_pairing.json")]);
    assert_eq!(out.status.code(), Some(2));
    let recs = lines(&out);
    assert_eq!(recs[0]["valid"], false);
    assert_eq!(recs[0]["condition"], "d");
    let out = qcover(&["run", "--datum", &fixture("odd_pairing.json"), "--suites", "datum"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition (d)"));
}

#[test]
fn serre_suite_reports_the_reduction() {
    let out = qcover(&["run", "--datum", &data("b02.json"), "--suites", "serre", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let serre: Vec<&Value> = recs.iter().filter(|r| r["anchor"] == "quantum Serre relation").collect();
    assert_eq!(serre.len(), 2);
    assert!(serre.iter().all(|r| r["pass"] == true));
}

#[test]
fn cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcover"))
        .args(["theta", "--datum", &data("b01.json")])
        .env("QCOVER_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // Θ_0, Θ_1, Θ_2
    assert_eq!(lines(&out).len(), 3);
    let out = qcover(&["theta", "--datum", &data("b01.json"), "--cap", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.iter().filter(|r| r.get("theta").is_some()).count(), 4);
    assert!(recs.iter().filter(|r| r.get("check").is_some()).all(|r| r["pass"] == true));
}

#[test]
fn module_tensor_product_decomposes() {
    let out = qcover(&["module", "--datum", "b01", "--lambda", "2", "--sign", "-", "--tensor", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let weights: Vec<i64> = recs.iter().filter_map(|r| r["weight"].as_array()).map(|w| w[0].as_i64().unwrap()).collect();
    assert_eq!(weights, vec![-3, -1, 1, 3]);
    let dec = recs.iter().find(|r| r.get("decomposition").is_some()).unwrap();
    let mut tops: Vec<i64> = dec["decomposition"].as_array().unwrap().iter().map(|p| p["highest"][0].as_i64().unwrap()).collect();
    tops.sort();
    assert_eq!(tops, vec![1, 3]);
}

#[test]
fn character_outside_evenness_agrees() {
    let out = qcover(&["char", "--datum", &data("b02.json"), "--lambda", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert!(recs.iter().all(|r| r["weyl_kac"] == r["minus"] && r["weyl_kac"] == r["plus"]));
    let dim: i64 = recs.iter().map(|r| r["weyl_kac"].as_i64().unwrap()).sum();
    // the spin-like module of B2: four weights of multiplicity one
    assert_eq!(dim, 4);
}

#[test]
fn higher_serre_grid_for_one_pair() {
    let out = qcover(&["higher-serre", "--datum", &data("b02.json"), "--i", "1", "--j", "0", "--nmax", "1", "--mmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 8);
    let cell = |n: i64, m: i64| recs.iter().find(|r| r["n"] == n && r["m"] == m).unwrap().clone();
    assert_eq!(cell(1, 3)["vanishes"], true);
    assert_eq!(cell(1, 2)["vanishes"], false);
}

#[test]
fn gram_agrees_with_the_basis() {
    let out = qcover(&["gram", "--datum", &data("b02.json"), "--nu", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["words"], 3);
    // partitions of a1 + 2a2 into B2 positive roots: {a1+2a2}, {a1+a2, a2}, {a1, a2, a2}
    assert_eq!(r["basis_dim"], 3);
    assert_eq!(r["pass"], true);
}

#[test]
fn casimir_without_e_is_falsified_in_the_minus_component() {
    let ok = qcover(&["casimir", "--datum", "b01", "--lambda", "2", "--sign", "-"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = qcover(&["casimir", "--datum", "b01", "--lambda", "2", "--sign", "-", "--without-e"]);
    assert_eq!(bad.status.code(), Some(1));
}
