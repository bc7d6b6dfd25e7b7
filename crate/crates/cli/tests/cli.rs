mod common;

use std::fs;

use serde_json::Value;

use common::run;

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("result is JSON")
}

#[test]
fn envelope_names_command_and_tolerances() {
    let out = run(&["parallel-sum", "identity.json", "identity.json", "--tol-psd", "1e-9"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = parse(&out.stdout);
    assert_eq!(doc["command"], "parallel-sum");
    assert_eq!(doc["tolerances"]["psd"], 1e-9);
    assert_eq!(doc["tolerances"]["recon"], 1e-8);
    assert_eq!(doc["result"]["parallel_sum"]["dim"], 2);
}

#[test]
fn precondition_failures_exit_with_two() {
    let out = run(&["rn", "identity.json", "diag_1_0.json"]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stderr, "error: t not dominated by w\n");
    assert!(out.stdout.is_empty());

    let out = run(&["extreme-check", "diag_2_1.json", "identity.json"]);
    assert_eq!((out.code, out.stderr.as_str()), (2, "error: u not below t\n"));

    let out = run(&["dilate", "k_identity.json", "k_diag_1_0.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no dilation"));
}

#[test]
fn malformed_input_exits_with_one_and_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("truncated.json");
    fs::write(&truncated, "{\"dim\": 2,\n \"matrix\": [[[1, 0], [0, 0]],\n").unwrap();
    let out = run(&["short", truncated.to_str().unwrap(), "identity.json"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    let ragged = dir.path().join("ragged.json");
    fs::write(&ragged, r#"{"dim": 2, "matrix": [[[1, 0], [0, 0]], [[1, 0]]]}"#).unwrap();
    let out = run(&["short", ragged.to_str().unwrap(), "identity.json"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("field `matrix`: row 1 has 1 entries"), "{}", out.stderr);

    let unknown = dir.path().join("unknown.json");
    fs::write(&unknown, r#"{"dim": 1, "matrix": [[[1, 0]]], "extra": 0}"#).unwrap();
    let out = run(&["short", unknown.to_str().unwrap(), unknown.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unknown field `extra`"), "{}", out.stderr);

    let indefinite = dir.path().join("indefinite.json");
    fs::write(&indefinite, r#"{"dim": 2, "matrix": [[[1, 0], [2, 0]], [[2, 0], [1, 0]]]}"#).unwrap();
    let out = run(&["short", indefinite.to_str().unwrap(), "identity.json"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not positive definite"), "{}", out.stderr);

    let out = run(&["short", "missing.json", "identity.json"]);
    assert_eq!(out.code, 1);
}

#[test]
fn bad_arguments_exit_with_one() {
    assert_eq!(run(&["no-such-command"]).code, 1);
    assert_eq!(run(&["short", "identity.json"]).code, 1);
    let out = run(&["short", "identity.json", "identity.json", "--rank-tol", "-1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("rank_tol"), "{}", out.stderr);
    assert_eq!(run(&["check-theorems", "identity.json"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn dimension_mismatch_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    fs::write(&one, r#"{"dim": 1, "matrix": [[[1, 0]]]}"#).unwrap();
    let out = run(&["decompose-short", one.to_str().unwrap(), "identity.json"]);
    assert_eq!(out.code, 1, "{}", out.stderr);
}

#[test]
fn output_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["infimum", "identity.json", "diag_1_0.json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let doc = parse(&fs::read_to_string(&path).unwrap());
    assert_eq!(doc["result"]["exists"], true);
    assert_eq!(doc["result"]["witness"], "regular_leq_w");
}

#[test]
fn emitted_forms_are_valid_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["decompose-short", "diag_2_1.json", "diag_1_0.json"]);
    let doc = parse(&out.stdout);
    let ac = dir.path().join("ac.json");
    fs::write(&ac, serde_json::to_string(&doc["result"]["ac"]).unwrap()).unwrap();
    let again = run(&["decompose-short", ac.to_str().unwrap(), "diag_1_0.json"]);
    assert_eq!(again.code, 0, "{}", again.stderr);
    assert_eq!(parse(&again.stdout)["result"]["ac"], doc["result"]["ac"]);
}

#[test]
fn rn_accepts_an_explicit_vector() {
    let dir = tempfile::tempdir().unwrap();
    let y = dir.path().join("y.json");
    fs::write(&y, "[[2, 0], [0, 1]]").unwrap();
    let out = run(&["rn", "diag_1_0.json", "identity.json", "--vector", y.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = parse(&out.stdout);
    let reps = doc["result"]["representatives"].as_array().unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["ambient"], serde_json::json!([[2.0, 0.0], [0.0, 0.0]]));

    fs::write(&y, "[[2, 0]]").unwrap();
    assert_eq!(run(&["rn", "identity.json", "identity.json", "--vector", y.to_str().unwrap()]).code, 1);
}

#[test]
fn kernel_labels_survive_decomposition() {
    let out = run(&["kernel-short", "k_ones.json", "k_diag_1_0.json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = parse(&out.stdout);
    assert_eq!(doc["result"]["ac"]["labels"], serde_json::json!(["a", "b"]));
    assert_eq!(doc["result"]["unique"], true);
}

#[test]
fn ensembles_depend_only_on_the_seed() {
    let a = run(&["check-theorems", "--samples", "15", "--seed", "5", "--dim", "3"]);
    let b = run(&["check-theorems", "--samples", "15", "--seed", "5", "--dim", "3"]);
    let c = run(&["check-theorems", "--samples", "15", "--seed", "6", "--dim", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(parse(&c.stdout)["result"]["seed"], 6);
    assert_eq!(parse(&a.stdout)["result"]["mutual_ad"]["failed"], 0);
    assert_eq!(parse(&a.stdout)["result"]["segment_extremes"]["failed"], 0);
}
