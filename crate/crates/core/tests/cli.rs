use std::process::{Command, Output};

use serde_json::Value;

fn kmss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmss")).args(args).env_remove("KMSS_CAP").output().expect("binary runs")
}

fn kmss_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmss")).args(args).env("KMSS_CAP", "").env(key, val).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const HYPERBOLIC: &str = "[[2,-3],[-3,2]]";

#[test]
fn classify_reports_type_and_rank() {
    let out = kmss(&["--json", "classify", "--matrix", "[[2,-1],[-1,2]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["type"], "spherical");
    assert_eq!(v["results"]["rank"], 2);
    let out = kmss(&["--json", "classify", "--family", "Atilde1"]);
    assert_eq!(json(&out)["results"]["type"], "affine");
}

#[test]
fn invalid_matrix_is_a_domain_error() {
    let out = kmss(&["classify", "--matrix", "[[2,0],[-1,2]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = kmss(&["--json", "classify", "--matrix", "[[2,1],[-1,2]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(kmss(&["classify", "--bogus"]).status.code(), Some(2));
    assert_eq!(kmss(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(kmss(&["classify"]).status.code(), Some(1));
}

#[test]
fn tits_cone_verdicts_and_exit_codes() {
    let out = kmss(&["--json", "tits-cone", "--matrix", HYPERBOLIC, "--point", "[1,1]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["status"], "in_negative_cone");

    let out = kmss(&["--json", "tits-cone", "--matrix", HYPERBOLIC, "--point", "[1,0]", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["results"]["status"], "undetermined");
    assert_eq!(v["results"]["steps"], 100);

    let out = kmss(&["--json", "tits-cone", "--matrix", HYPERBOLIC, "--point", "[-1,-1]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["status"], "in_cone");
}

#[test]
fn cap_comes_from_the_environment() {
    let out = kmss_env(&["--json", "tits-cone", "--matrix", HYPERBOLIC, "--point", "[1,0]"], "KMSS_CAP", "50");
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["results"]["steps"], 50);
    // An explicit flag wins.
    let out = kmss_env(&["--json", "tits-cone", "--matrix", HYPERBOLIC, "--point", "[1,0]", "--cap", "7"], "KMSS_CAP", "50");
    assert_eq!(json(&out)["results"]["steps"], 7);
    let out = kmss_env(&["tits-cone", "--matrix", HYPERBOLIC, "--point", "[1,0]", "--cap", "7"], "KMSS_CAP", "oops");
    assert!(String::from_utf8_lossy(&out.stderr).is_empty());
    let out = kmss_env(&["tits-cone", "--matrix", HYPERBOLIC, "--point", "[1,0]"], "KMSS_CAP", "oops");
    assert!(String::from_utf8_lossy(&out.stderr).contains("KMSS_CAP"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "check-axioms", "--model", "euclidean", "--samples", "50", "--seed", "11"];
    let (a, b) = (json(&kmss(&args)), json(&kmss(&args)));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["inputs_hash"], b["inputs_hash"]);
    let other = json(&kmss(&["--json", "check-axioms", "--model", "euclidean", "--samples", "50", "--seed", "12"]));
    assert_ne!(a["inputs_hash"], other["inputs_hash"]);
    // Hex-encoded SHA-256.
    assert_eq!(a["inputs_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn weyl_words_round_trip_through_json() {
    let v = json(&kmss(&["--json", "weyl", "--family", "A2", "--word", "[1,2,1]", "--equals", "[2,1,2]"]));
    assert_eq!(v["results"]["matrix"], serde_json::json!([[0, -1], [-1, 0]]));
    assert_eq!(v["results"]["word"], serde_json::json!([1, 2, 1]));
    let word = v["results"]["word"].to_string();
    let again = json(&kmss(&["--json", "weyl", "--family", "A2", "--word", &word]));
    assert_eq!(again["results"]["matrix"], v["results"]["matrix"]);
    assert_eq!(kmss(&["weyl", "--family", "A2", "--word", "[3]"]).status.code(), Some(1));
}

#[test]
fn roots_of_affine_a1() {
    let v = json(&kmss(&["--json", "roots", "--family", "Atilde1", "--height", "5"]));
    let roots = v["results"]["roots"].as_array().expect("root list");
    assert_eq!(roots.len(), 6);
}

#[test]
fn causal_order_refuses_affine() {
    let out = kmss(&["causal", "--family", "Atilde1", "--x", "[0]", "--y", "[1]"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&kmss(&["--json", "causal", "--matrix", HYPERBOLIC, "--x", "[0,0]", "--y", "[-1,-1]"]));
    assert_eq!(v["results"]["relation"], "precedes");
}

#[test]
fn star_sphericity_of_standard_families() {
    for (family, expected) in [("E10", true), ("AE5", true), ("Atilde1", false), ("A4", true)] {
        let v = json(&kmss(&["--json", "star-spherical", "--family", family]));
        assert_eq!(v["results"]["star_spherical"], expected, "{family}: {v}");
    }
}

#[test]
fn group_model_fails_rs4() {
    let v = json(&kmss(&["--json", "check-axioms", "--model", "sl2-group", "--samples", "20"]));
    let checks = v["results"]["checks"].as_array().unwrap();
    let rs4 = checks.iter().find(|c| c["name"] == "RS4").unwrap();
    assert_eq!(rs4["status"], "failed");
}

#[test]
fn demo_hole_prints_non_splitting_verdict() {
    let out = kmss(&["--json", "demo-hole", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"no\""), "{text}");
}

#[test]
fn realize_sign_generator() {
    let v = json(&kmss(&["--json", "realize", "--family", "A2", "--perm", "[1,2]", "--sign", "-1"]));
    assert_eq!(v["results"]["chamber_image"], "negative_chamber");
    assert_eq!(v["results"]["preserves_form"], true);
}
