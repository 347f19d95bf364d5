//! End-to-end tests of the command-line interface: exit codes, output
//! schemas, and byte-identical reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sneg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sneg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("sneg_cli_tests").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn measure_werner_08() {
    let out = sneg(&["measure", "--family", "werner", "--param", "0.8"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let n = report["negativity"].as_f64().unwrap();
    assert!((n - 0.7).abs() < 1e-10);
    assert!((report["structured_negativity"].as_f64().unwrap() - 0.7).abs() < 1e-10);
    assert_eq!(report["q_count"].as_u64().unwrap(), 1);
    assert_eq!(report["separable_by_spa"].as_bool().unwrap(), false);
}

#[test]
fn measure_mems_09() {
    let out = sneg(&["measure", "--family", "mems", "--param", "0.9"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let expected = -1.0 + 0.9 + (1.0f64 - 1.8 + 1.62).sqrt();
    assert!((report["negativity"].as_f64().unwrap() - expected).abs() < 1e-10);
}

#[test]
fn measure_bad_state_file_exits_2_naming_invariant() {
    let dir = tmpdir("bad_state");
    let path = dir.join("bad.json");
    // half-trace maximally mixed matrix
    let entry = |v: f64| serde_json::json!([v, 0.0]);
    let row = |j: usize, v: f64| -> Vec<serde_json::Value> {
        (0..4).map(|k| if k == j { entry(v) } else { entry(0.0) }).collect()
    };
    let doc = serde_json::json!({
        "d": 2,
        "matrix": [row(0, 0.125), row(1, 0.125), row(2, 0.125), row(3, 0.125)],
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = sneg(&["measure", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("trace"), "stderr names the invariant: {err}");
}

#[test]
fn usage_errors_exit_1() {
    let out = sneg(&["measure", "--family", "nonsense", "--param", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sneg(&["measure"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sneg(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_of_range_parameter_exits_2() {
    let out = sneg(&["measure", "--family", "werner", "--param", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_csv_is_byte_identical_and_schema_stable() {
    let args = ["sweep", "--family", "werner", "--start", "0.4", "--stop", "1.0", "--steps", "11"];
    let a = sneg(&args);
    let b = sneg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "CSV must be byte-identical across runs");
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,negativity,structured_negativity,c_lb,q,lambda_min_pt,lambda_min_spa"
    );
    assert_eq!(lines.count(), 11);
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_auto_endpoints_rho_a() {
    let out = sneg(&["sweep", "--family", "rho_a", "--start", "auto", "--stop", "auto", "--steps", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first_row = text.lines().nth(1).unwrap();
    let param: f64 = first_row.split(',').next().unwrap().parse().unwrap();
    assert!((param - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
}

#[test]
fn sweep_rejects_bad_range() {
    let out = sneg(&["sweep", "--family", "werner", "--start", "0.5", "--stop", "2.0", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_run_exits_0_and_is_deterministic() {
    let args = ["verify", "--dims", "2", "--trials", "20", "--seed", "7"];
    let a = sneg(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = sneg(&args);
    assert_eq!(a.stdout, b.stdout);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(reports.as_array().unwrap().len() > 5);
}

#[test]
fn verify_zero_trials_exits_0_with_empty_reports() {
    let out = sneg(&["verify", "--dims", "2,3", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for r in reports.as_array().unwrap() {
        assert_eq!(r["trials"].as_u64().unwrap(), 0);
        assert_eq!(r["violations"].as_u64().unwrap(), 0);
    }
}

#[test]
fn verify_single_suite_weyl() {
    let out = sneg(&["verify", "--suite", "weyl", "--dims", "2,3", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for r in reports.as_array().unwrap() {
        assert_eq!(r["suite_name"].as_str().unwrap(), "weyl");
        assert_eq!(r["violations"].as_u64().unwrap(), 0);
    }
}

#[test]
fn spa_round_trip_werner_singlet() {
    let dir = tmpdir("spa");
    let input = dir.join("werner1.json");
    let output = dir.join("spa.json");

    // write werner(1) through the library, then run the CLI on the file
    let state = sneg::qstate::werner(1.0).unwrap();
    state.save(&input).unwrap();

    let out = sneg(&["spa", "--input", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let loaded = sneg::qstate::BipartiteState::load(&output).unwrap();
    let spec = sneg::matcore::eigvals_hermitian(loaded.rho(), 1e-8).unwrap();
    assert!((spec.min() - 1.0 / 6.0).abs() < 1e-10, "λ_min(spa(werner(1))) = 1/6");

    let in_memory = sneg::measures::spa_pt(&state).unwrap();
    assert!(loaded.rho().max_abs_diff(in_memory.rho()) < 1e-15);
}

#[test]
fn spa_fixed_point_maximally_mixed() {
    let dir = tmpdir("spa_fixed");
    let input = dir.join("mixed.json");
    let output = dir.join("spa_mixed.json");
    let rho = sneg::matcore::ComplexMatrix::identity(4).scale_re(0.25);
    sneg::qstate::BipartiteState::new(2, rho).unwrap().save(&input).unwrap();
    let out = sneg(&["spa", "--input", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert!(out.status.success());
    let loaded = sneg::qstate::BipartiteState::load(&output).unwrap();
    let expected = sneg::matcore::ComplexMatrix::identity(4).scale_re(0.25);
    assert!(loaded.rho().max_abs_diff(&expected) < 1e-15);
}
