//! End-to-end tests of the command-line surface: exit codes, manifest
//! round-trips, and byte-level determinism of exact outputs.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_typed-asep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_stdout(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_all_small_rank_passes() {
    let out = run(&["verify-all", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = parse_stdout(&out);
    assert_eq!(doc["manifest"]["schema"], "typed-asep/1");
    assert_eq!(doc["result"]["pass"], true);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.lines().filter(|l| l.starts_with("PASS")).count() >= 6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["generator", "--n", "3", "--delta", "0"] as &[&str], // missing --sites
        &["central", "--n", "3", "--mode", "numeric"],         // missing --q
        &["central", "--n", "1", "--mode", "symbolic"],        // n below range
        &["generator", "--n", "3", "--delta", "5", "--sites", "2"], // delta out of range
        &["simulate", "--n", "3", "--delta", "0", "--sites", "2", "--q", "2", "--tmax", "1", "--initial", "9,9"],
        &["no-such-command"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn generator_output_is_deterministic_and_round_trips() {
    let args = ["generator", "--n", "4", "--delta", "1", "--sites", "3", "--q", "3/2"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let doc1 = parse_stdout(&first);
    let doc2 = parse_stdout(&second);
    // everything except the wall-clock duration is byte-identical
    assert_eq!(doc1["result"], doc2["result"]);
    assert_eq!(doc1["manifest"]["params"], doc2["manifest"]["params"]);
    // the sparse matrix parses back and has zero row sums
    let gen = typed_asep::json::generator_from_json(&doc1["result"]).expect("decodes");
    for row in 0..gen.dim() {
        assert!(typed_asep::exact::Scalar::is_zero(&gen.row_sum(row)));
    }
    // re-running from the manifest parameters reproduces the result
    let params = &doc1["manifest"]["params"];
    let rerun = run(&[
        "generator",
        "--n", &params["n"].to_string(),
        "--delta", &params["delta"].to_string(),
        "--sites", &params["sites"].to_string(),
        "--q", params["q"].as_str().unwrap(),
    ]);
    assert_eq!(parse_stdout(&rerun)["result"], doc1["result"]);
}

#[test]
fn central_numeric_reports_the_scalar() {
    let out = run(&["central", "--n", "2", "--mode", "numeric", "--q", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_stdout(&out);
    // q^4 + 2 + q^-4 at q = 10
    assert_eq!(doc["result"]["scalar"], "100020001/10000");
    assert_eq!(doc["result"]["mode"], "numeric");
    let element = typed_asep::json::element_from_json(&doc["result"]["element"]).expect("decodes");
    assert_eq!(element.num_terms(), doc["result"]["terms"].as_u64().unwrap() as usize);
}

#[test]
fn duality_check_reports_zero_residuals() {
    let out = run(&["duality-check", "--n", "3", "--sites", "2", "--points", "3", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_stdout(&out);
    let residuals = doc["result"]["max_residuals"].as_array().unwrap();
    assert_eq!(residuals.len(), 3);
    assert!(residuals.iter().all(|r| r == "0"));
}

#[test]
fn simulate_is_seed_reproducible() {
    let args = [
        "simulate", "--n", "3", "--delta", "0", "--sites", "3", "--q", "2",
        "--tmax", "2.5", "--seed", "42", "--initial", "3,0,1", "--trials", "2",
    ];
    let doc1 = parse_stdout(&run(&args));
    let doc2 = parse_stdout(&run(&args));
    assert_eq!(doc1["result"], doc2["result"]);
    let trajectories = doc1["result"]["trajectories"].as_array().unwrap();
    assert_eq!(trajectories.len(), 2);
    assert!(trajectories[0]["times"].as_array().unwrap().len() > 1);
}

#[test]
fn hamiltonian_report_for_one_delta() {
    let out = run(&["hamiltonian", "--n", "2", "--delta", "0", "--q", "7/2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_stdout(&out);
    assert_eq!(doc["result"]["asep_matches"], serde_json::json!([true]));
    assert_eq!(doc["result"]["pruned"].as_array().unwrap().len(), 1);
    assert_eq!(doc["result"]["block_sizes"].as_array().unwrap().last().unwrap(), 4);
}

#[test]
fn duality_mc_exits_clean() {
    let out = run(&[
        "duality-mc", "--n", "3", "--sites", "2", "--q", "2", "--alpha1", "3",
        "--alpha2", "5", "--t", "0.3", "--trials", "4000", "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = parse_stdout(&out);
    assert_eq!(doc["result"]["compatible"], true);
    assert!(doc["result"]["semigroup_residual"].as_f64().unwrap() < 1e-10);
}
