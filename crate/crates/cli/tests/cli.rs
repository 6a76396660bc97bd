//! End-to-end tests of the `qctx` binary: output schemas, file handling,
//! determinism, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

use qctx_core::graph::{random_jpd, PairwiseMarginals};
use qctx_core::quantum::{build_pentagon_family, FamilyParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn qctx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qctx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qctx-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn eval_defaults_to_the_optimal_family_point() {
    let v = stdout_json(&qctx(&["eval"]));
    assert_eq!(v["params"]["theta"], 0.2366);
    assert!((v["entropy"]["c_value"].as_f64().unwrap() - 0.0910907256604).abs() < 1e-12);
    assert_eq!(v["contextual"], true);
    assert!((v["kcbs"]["violation"].as_f64().unwrap() - 0.0491707063769).abs() < 1e-12);
}

#[test]
fn compact_json_is_single_line() {
    let out = qctx(&["--json", "eval"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end_matches('\n').lines().count(), 1);
    assert!(text.starts_with("{\"params\""));
}

#[test]
fn eval_reads_a_config_file() {
    let config =
        build_pentagon_family(&FamilyParams::new(0.4, 0.12).unwrap()).unwrap();
    let path = temp_path("config.json");
    std::fs::write(&path, serde_json::to_string(&config).unwrap()).unwrap();

    let v = stdout_json(&qctx(&["eval", "--config", path.to_str().unwrap()]));
    let direct = qctx_core::entropy::evaluate_c(&config).unwrap().c_value;
    let via_cli = v["entropy"]["c_value"].as_f64().unwrap();
    assert!((via_cli - direct).abs() < 1e-12);
    // File-based configs carry no family parameters.
    assert!(v.get("params").is_none());
    std::fs::remove_file(&path).ok();
}

#[test]
fn scan_emits_csv_with_header() {
    let out = qctx(&["scan", "--res", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,phi,C");
    assert_eq!(lines.len(), 1 + 16);
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 3);
    }
}

#[test]
fn scan_writes_csv_file_and_prints_summary() {
    let path = temp_path("scan.csv");
    let v = stdout_json(&qctx(&[
        "--json",
        "scan",
        "--theta-min",
        "0",
        "--theta-max",
        "1",
        "--phi-min",
        "0",
        "--phi-max",
        "0.5",
        "--res",
        "41",
        "--out",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["resolution"], 41);
    assert_eq!(v["points"], 41 * 41);
    let best_c = v["best"]["c_value"].as_f64().unwrap();
    assert!(best_c > 0.09, "best C on the refined window: {best_c}");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 41 * 41);
    std::fs::remove_file(&path).ok();
}

#[test]
fn optimize_two_param_converges_to_the_optimum() {
    let v = stdout_json(&qctx(&["optimize"]));
    assert_eq!(v["converged"], true);
    assert!((v["c_value"].as_f64().unwrap() - 0.0910907366111).abs() < 1e-9);
    assert!((v["params"]["theta"].as_f64().unwrap() - 0.23665).abs() < 1e-3);
    assert!((v["params"]["phi"].as_f64().unwrap() - 0.16980).abs() < 1e-3);
}

#[test]
fn optimize_general_is_deterministic() {
    let args = [
        "--json",
        "optimize",
        "--mode",
        "general",
        "--restarts",
        "6",
        "--seed",
        "123",
        "--max-iter",
        "1500",
    ];
    let first = qctx(&args);
    let second = qctx(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["restarts"], 6);
    assert!(v["symmetry_residuals"].as_array().unwrap().len() == 3);
}

#[test]
fn feasibility_flags_the_quantum_optimum_as_infeasible() {
    let v = stdout_json(&qctx(&["feasibility"]));
    assert_eq!(v["status"], "infeasible");
    assert!(v["certificate"].as_array().unwrap().len() == 21);
    assert!(v.get("witness").is_none());
    assert!(v["residual"].as_f64().unwrap() > 1e-7);
}

#[test]
fn feasibility_finds_the_deterministic_witness_at_the_corner() {
    let v = stdout_json(&qctx(&["feasibility", "--theta", "0", "--phi", "0"]));
    assert_eq!(v["status"], "feasible");
    assert_eq!(v["witness"]["table"]["01010"], 1.0);
    assert!(v["residual"].as_f64().unwrap() <= 1e-7);
}

#[test]
fn feasibility_reads_marginals_from_a_file() {
    // Marginals of an explicit joint distribution are always feasible.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let master = random_jpd(&[0, 1, 2, 3, 4], &mut rng).unwrap();
    let mut marginals = PairwiseMarginals::new(5);
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] {
        marginals
            .insert(i, j, master.pair_marginal(i, j).unwrap())
            .unwrap();
    }
    let path = temp_path("marginals.json");
    std::fs::write(&path, serde_json::to_string(&marginals).unwrap()).unwrap();

    let v = stdout_json(&qctx(&["feasibility", "--marginals", path.to_str().unwrap()]));
    assert_eq!(v["status"], "feasible");
    assert!(v["residual"].as_f64().unwrap() <= 1e-7);
    std::fs::remove_file(&path).ok();
}

#[test]
fn sample_is_seeded_and_reports_a_covering_interval() {
    let args = [
        "--json",
        "sample",
        "--shots",
        "20000",
        "--resamples",
        "200",
        "--seed",
        "9",
    ];
    let first = qctx(&args);
    let second = qctx(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let truth = v["c_true"].as_f64().unwrap();
    assert!((truth - 0.0910907256604).abs() < 1e-12);
    let (lo, hi) = (
        v["estimate"]["ci_low"].as_f64().unwrap(),
        v["estimate"]["ci_high"].as_f64().unwrap(),
    );
    assert!(lo < hi);
    for counts in v["counts"].as_array().unwrap() {
        let total = counts["n00"].as_u64().unwrap()
            + counts["n01"].as_u64().unwrap()
            + counts["n10"].as_u64().unwrap();
        assert_eq!(total, 20000);
    }
}

#[test]
fn miller_madow_flag_changes_the_point_estimate() {
    let base = ["--json", "sample", "--shots", "500", "--resamples", "50", "--seed", "4"];
    let plain = stdout_json(&qctx(&base));
    let mut with_flag: Vec<&str> = base.to_vec();
    with_flag.push("--miller-madow");
    let corrected = stdout_json(&qctx(&with_flag));
    assert_eq!(plain["estimate"]["miller_madow"], false);
    assert_eq!(corrected["estimate"]["miller_madow"], true);
    assert_ne!(
        plain["estimate"]["c_hat"].as_f64().unwrap(),
        corrected["estimate"]["c_hat"].as_f64().unwrap()
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    // 2: unusable input.
    let out = qctx(&["eval", "--config", "/nonexistent/q.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qctx(&["eval", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: domain violation surfaced by the library.
    let out = qctx(&["eval", "--phi", "0.9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("phi"));

    // 4: optimizer ran out of budget; the JSON is still printed.
    let out = qctx(&["--json", "optimize", "--max-iter", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["converged"], false);

    // Garbage inside an input file is an input error, not a crash.
    let path = temp_path("garbage.json");
    std::fs::write(&path, "not json").unwrap();
    let out = qctx(&["eval", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn broken_config_file_is_rejected_at_parse_time() {
    // A syntactically valid config whose projectors break cyclic
    // orthogonality must be rejected by the library layer.
    let mut v = serde_json::to_value(
        build_pentagon_family(&FamilyParams::new(0.3, 0.1).unwrap()).unwrap(),
    )
    .unwrap();
    v["projectors"][1] = serde_json::json!([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]);
    let path = temp_path("broken.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = qctx(&["eval", "--config", path.to_str().unwrap()]);
    // Deserialization enforces the invariant, so parsing fails: exit 2.
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.status.success());
    std::fs::remove_file(&path).ok();
}
