//! End-to-end tests of the binary: exit-code contract, formats, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tiered"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn validate_good_graph_exits_zero() {
    let out = run(&["validate", fixture("worked_example_graph.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn validate_tier_violation_exits_one_and_names_edge() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.json",
        r#"{"n": 2, "m": 2, "tier": [2, 1], "edges": [[1, 2]]}"#,
    );
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("(1,2)"), "violation must name the edge: {stderr}");
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "broken.json", "{ not json");
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let out = run(&[
        "tutte",
        fixture("worked_example_graph.json").to_str().unwrap(),
        "--cap-trees",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn env_caps_override() {
    let out = bin()
        .args(["tutte", fixture("worked_example_graph.json").to_str().unwrap()])
        .env("TIERED_CAPS", "trees=5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tutte_k3_displays_polynomial() {
    let out = run(&["tutte", fixture("k3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["display"], "x^2 + x + y");
    assert_eq!(doc["spanning_trees"], "3");
}

#[test]
fn bijection_worked_example_reports_corrected_vector_and_roundtrip() {
    let out = run(&["bijection", fixture("worked_example_polyomino.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    let grains: Vec<i64> = doc["initial_configuration"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["grains"].as_i64().unwrap())
        .collect();
    assert_eq!(grains, vec![9, 7, 5, 6, 4, 4, 3, 3, 3, 2, 1, 1]);
    assert_eq!(doc["roundtrip_ok"], true);
    assert_eq!(doc["g_parking_verified"], true);
    assert_eq!(
        doc["toppling_order"],
        serde_json::json!([3, 11, 7, 10, 6, 5, 4, 1, 9, 2, 12])
    );
}

#[test]
fn bijection_enumerate_counts_agree() {
    let out = run(&["bijection", "--enumerate", "1|2|3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["lpp_count"], 3);
    assert_eq!(doc["parking_count"], 3);
    assert_eq!(doc["spanning_trees"], "3");
    assert_eq!(doc["counts_equal"], true);
}

#[test]
fn bijection_rejects_invalid_lpp() {
    let dir = tempfile::tempdir().unwrap();
    // swap two labels in a column of the worked-example polyomino
    let text = std::fs::read_to_string(fixture("worked_example_polyomino.json"))
        .unwrap()
        .replace(r#"{"cell": [2, 3], "label": 7, "color": "red"}"#, r#"{"cell": [2, 3], "label": 10, "color": "red"}"#)
        .replace(r#"{"cell": [2, 4], "label": 10, "color": "red"}"#, r#"{"cell": [2, 4], "label": 7, "color": "red"}"#);
    let bad = write_temp(&dir, "bad_lpp.json", &text);
    let out = run(&["bijection", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not increasing"));
}

#[test]
fn bijection_rejects_mismatched_pools() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("worked_example_polyomino.json"))
        .unwrap()
        .replace("[[1, 2, 3, 4, 5, 6, 9], [8], [7, 10, 11, 12]]",
                 "[[1, 2, 3, 4, 5, 6, 7], [8], [9, 10, 11, 12]]");
    let bad = write_temp(&dir, "bad_pools.json", &text);
    let out = run(&["bijection", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));
}

#[test]
fn dual_twice_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&["dual", fixture("worked_example_graph.json").to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    let doc = stdout_json(&first);
    let dual_graph = serde_json::to_string(&doc["dual"]).unwrap();
    let dual_path = write_temp(&dir, "dual.json", &dual_graph);
    let second = run(&["dual", dual_path.to_str().unwrap()]);
    let doc2 = stdout_json(&second);
    let original: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("worked_example_graph.json")).unwrap())
            .unwrap();
    assert_eq!(doc2["dual"]["tier"], original["tier"]);
    assert_eq!(doc2["dual"]["edges"], original["edges"]);
}

#[test]
fn sandpile_check_passes_on_k3() {
    let out = run(&[
        "sandpile",
        fixture("k3.json").to_str().unwrap(),
        "--sink",
        "3",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["g_parking_count"], 3);
    assert_eq!(doc["recurrent_count"], 3);
    assert_eq!(doc["checks_passed"], true);
}

#[test]
fn sandpile_classifies_a_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_temp(
        &dir,
        "config.json",
        r#"{"sink": 3, "grains": {"1": 0, "2": 0}}"#,
    );
    let out = run(&[
        "sandpile",
        fixture("k3.json").to_str().unwrap(),
        "--sink",
        "3",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["stable"], true);
    assert_eq!(doc["g_parking"], true);
    assert_eq!(doc["stabilized_recurrent"], false);
}

#[test]
fn hilbert_check_on_k3() {
    let out = run(&["hilbert", fixture("k3.json").to_str().unwrap(), "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["graded_dims"]["dims"], serde_json::json!([1, 2]));
    assert_eq!(doc["report"]["tree_count"], 3);
    assert_eq!(doc["report"]["checks"]["tutte_match"], true);
}

#[test]
fn hilbert_sink_reports_ideal_data() {
    let out = run(&["hilbert", fixture("k3.json").to_str().unwrap(), "--sink", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["ideal_data"]["standard_monomial_count"], 3);
    assert_eq!(
        doc["ideal_data"]["power_ideal_dims"]["dims"],
        serde_json::json!([1, 2, 3, 1, 0])
    );
    assert_eq!(doc["ideal_data"]["spanning_forests"], "7");
}

#[test]
fn hilbert_csv_format() {
    let out = run(&["hilbert", fixture("k3.json").to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("degree,dimension"));
    assert!(text.contains("0,1"));
    assert!(text.contains("1,2"));
}

#[test]
fn dual_dot_format() {
    let out = run(&[
        "dual",
        fixture("worked_example_graph.json").to_str().unwrap(),
        "--format",
        "dot",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("graph tiered {"));
    assert!(text.contains("rank=same"));
}

#[test]
fn bijection_ascii_format() {
    let out = run(&[
        "bijection",
        fixture("worked_example_polyomino.json").to_str().unwrap(),
        "--format",
        "ascii",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("k8"));
    assert!(text.contains("r12"));
}

#[test]
fn whitney_identify_and_twist() {
    let dir = tempfile::tempdir().unwrap();
    let k3_path = fixture("k3.json");
    let out = run(&[
        "whitney",
        "identify",
        k3_path.to_str().unwrap(),
        "2",
        k3_path.to_str().unwrap(),
        "2",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["n"], 5);
    assert_eq!(doc["checks_passed"], true);

    // twist needs anti-matching labels and aligned tiers
    let g1 = write_temp(
        &dir,
        "g1.json",
        r#"{"n": 4, "m": 3, "tier": [1, 2, 2, 3], "edges": [[1,2],[1,3],[1,4],[2,4],[3,4]]}"#,
    );
    let g2 = write_temp(
        &dir,
        "g2.json",
        r#"{"n": 3, "m": 2, "tier": [1, 1, 2], "edges": [[1,3],[2,3]]}"#,
    );
    let out = run(&[
        "whitney",
        "twist",
        g1.to_str().unwrap(),
        "2",
        "3",
        g2.to_str().unwrap(),
        "2",
        "1",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["tutte_invariant"], true);
}

#[test]
fn whitney_cleave_rejects_non_cut_vertex() {
    let out = run(&["whitney", "cleave", fixture("k3.json").to_str().unwrap(), "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_inputs_and_seed_give_identical_reports() {
    let k3 = fixture("k3.json");
    let args = [
        "sandpile",
        k3.to_str().unwrap(),
        "--sink",
        "3",
        "--check",
        "--seed",
        "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}
