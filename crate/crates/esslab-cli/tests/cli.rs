//! End-to-end checks of the binary: exit codes, JSON payload shape, and
//! determinism under a fixed seed.

use std::path::Path;
use std::process::{Command, Output};

fn esslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esslab")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn estimate_closed_form_normal() {
    let out = esslab(&[
        "estimate", "--family", "normal", "--m", "20", "--delta", "0", "--n", "100", "--engine",
        "closed-form",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["estimate"]["ess"], 17);
    assert_eq!(v["estimate"]["n_tilde_star"], 83);
    let cont = v["estimate"]["n_tilde_continuous"].as_f64().unwrap();
    assert!((cont - 83.3333333).abs() < 1e-6);
}

#[test]
fn estimate_beta_two_enumeration() {
    let out = esslab(&[
        "estimate", "--family", "beta2", "--prior1", "4,6", "--prior2", "4,6", "--theta1", "0.4",
        "--theta2", "0.4", "--n", "100", "--engine", "enum",
    ]);
    assert!(out.status.success());
    let ess = stdout_json(&out)["estimate"]["ess"].as_i64().unwrap();
    assert!((ess - 10).abs() <= 2, "ess {ess}");
}

#[test]
fn estimate_is_deterministic_given_seed() {
    let args = [
        "estimate", "--family", "beta1", "--prior1", "7,3", "--theta0", "0.7", "--n", "100",
        "--engine", "bootstrap", "--seed", "42",
    ];
    let a = esslab(&args);
    let b = esslab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn omitted_seed_is_echoed_to_stderr() {
    let out = esslab(&[
        "estimate", "--family", "normal", "--m", "5", "--n", "50", "--engine", "mc", "--draws",
        "1000",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("seed:"), "stderr: {err}");
}

#[test]
fn validation_failures_exit_2() {
    // missing required flag
    let out = esslab(&["estimate", "--family", "normal", "--n", "100", "--engine", "closed-form"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown scenario id
    let out = esslab(&["reproduce", "--id", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn boundary_minimizer_exits_3() {
    let out = esslab(&[
        "estimate", "--family", "beta1", "--prior1", "1,1", "--theta0", "0.5", "--n", "1",
        "--grid-lo", "5", "--engine", "enum",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // the flagged estimate is still emitted
    let v = stdout_json(&out);
    assert_eq!(v["estimate"]["at_boundary"], true);
    assert_eq!(v["estimate"]["n_tilde_star"], 5);
}

#[test]
fn simulate_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"scenario":"table4","config":{"pool_size":50,"bayes_n":100}}"#)
        .unwrap();
    let out = esslab(&["simulate", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let unknown_key = dir.path().join("unk.json");
    std::fs::write(&unknown_key, r#"{"scenario":"table4","config":{"pool_sizes":500}}"#).unwrap();
    let out = esslab(&["simulate", "--config", unknown_key.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_runs_twice_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"scenario":"table7","config":{"replicates":2,"bootstrap_count":200,"pool_size":400,"bayes_n":50,"seed":7}}"#,
    )
    .unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let run = |out: &Path| {
        let o = esslab(&[
            "simulate", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    run(&a);
    run(&b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn reproduce_writes_csv_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = esslab(&[
        "reproduce", "--id", "fig1", "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    assert!(csv.starts_with("n_tilde,ess,"));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig1.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["minima_ess"][0], 17);
}

#[test]
fn synth_then_audit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("eqtl.csv");
    let out = esslab(&[
        "synth-eqtl", "--rows", "200", "--seed", "5", "--out", data.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = esslab(&[
        "audit", "--data", data.to_str().unwrap(), "--response", "expression", "--covariate",
        "genotype", "--prior-mean", "0.08", "--n", "150", "--seed", "6", "--bootstrap-count",
        "2000",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["report"]["estimate"]["ess"].is_i64());
    assert!(v["report"]["p_value"].as_f64().unwrap() > 0.0);
}

#[test]
fn audit_reports_missing_columns() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("eqtl.csv");
    esslab(&["synth-eqtl", "--rows", "50", "--seed", "5", "--out", data.to_str().unwrap()]);
    let out = esslab(&[
        "audit", "--data", data.to_str().unwrap(), "--response", "expression", "--covariate",
        "snp", "--prior-mean", "0.08", "--n", "40",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("snp"));
}
