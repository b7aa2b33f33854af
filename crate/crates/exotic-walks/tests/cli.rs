//! End-to-end checks of the command-line interface: output bytes, exit
//! codes, and manifest reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exotic-walks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn dist_two_step_law_to_stdout() {
    let out = run(&["dist", "--profile", "const", "--lambda", "0.25", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "j,mass\n0,2.5000000000000000e-1\n2,7.5000000000000000e-1\n"
    );
}

#[test]
fn dist_time_zero_single_row() {
    let out = run(&["dist", "--profile", "const", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "j,mass\n0,1.0000000000000000e0\n");
}

#[test]
fn dist_exact_mode_emits_rationals() {
    let out = run(&["dist", "--profile", "const", "--n", "2", "--exact"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "j,mass\n0,1/4\n2,3/4\n");
}

#[test]
fn invalid_lambda_exits_2() {
    let out = run(&["dist", "--profile", "const", "--lambda", "0.3", "--n", "2"]);
    // 0.3 is a valid constant-profile lambda; the schedule rejects it.
    assert!(out.status.success());
    let out = run(&["dist", "--profile", "no-drift", "--lambda", "0.3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dist", "--profile", "no-clt", "--lambda", "0.3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dist", "--profile", "const", "--lambda", "1.3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exits_2() {
    let out = run(&["dist", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_exotic-walks"))
        .args(["dist", "--profile", "const", "--n", "100"])
        .env("EXOTIC_WALKS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn qi_dx_prints_exact_fraction() {
    let out = run(&["qi", "dx", "--C", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "68/81\n");
}

#[test]
fn qi_map_block_relative_word() {
    let out = run(&["qi", "map", "--C", "4", "--word", "cabb"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "bbbcabb\n");
}

#[test]
fn qi_map_global_and_inverse() {
    let out = run(&["qi", "map", "--C", "4", "--base", "8", "--word", "aaaacabb", "--global"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "aaaabbbcabb\n");
    let out = run(&["qi", "map", "--C", "4", "--base", "8", "--word", "aaaabbbcabb", "--invert"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "aaaacabb\n");
}

#[test]
fn qi_verify_small_ball() {
    let out = run(&["qi", "verify", "--C", "4", "--ball", "8", "--pairs", "2000"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("\"max_ratio\""));
    assert!(text.contains("\"injective\": true"));
}

#[test]
fn qi_law_check_zero_discrepancy() {
    let out = run(&["qi", "law-check", "--C", "4", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.0000000000000000e0\n");
}

#[test]
fn tame_report_shape() {
    let out = run(&["tame", "--profile", "const", "--horizon", "60", "--words", "2"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["bounded_jumps"]["support_size"], 4);
    assert!(json["rho_fit"].as_f64().unwrap() < 1.0);
    assert_eq!(json["irreducibility"].as_array().unwrap().len(), 16);
    assert!(json["transience_partial_sum"].as_f64().unwrap() >= 1.0);
}

#[test]
fn drift_auto_checkpoints_and_gap() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("drift.csv");
    let out = run(&[
        "drift",
        "--profile",
        "no-drift",
        "--scaled",
        "--lambda",
        "0.2",
        "--n0",
        "16",
        "--schedule-base",
        "4",
        "--horizon",
        "16384",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.starts_with("n,expectation,normalized,checkpoint_tag\n"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("drift.csv.summary.json")).unwrap())
            .unwrap();
    assert!(summary["gap"].as_f64().unwrap() > 0.0);
    assert!(Path::new(&dir.path().join("drift.csv.manifest.json")).exists());
}

#[test]
fn clt_grid_json() {
    let out = run(&[
        "clt", "--profile", "const", "--n", "400", "--sigma2", "0.75,1.0", "--z", "2",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ks = json["ks"].as_array().unwrap();
    assert_eq!(ks.len(), 2);
    assert!(ks[0]["interval_mass"].as_f64().unwrap() > 0.9);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "dist",
            "--profile",
            "no-clt",
            "--n",
            "300",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // Manifests differ only in the recorded path.
    let ma = std::fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap();
    let mb = std::fs::read_to_string(dir.path().join("b.csv.manifest.json")).unwrap();
    let da: serde_json::Value = serde_json::from_str(&ma).unwrap();
    let db: serde_json::Value = serde_json::from_str(&mb).unwrap();
    assert_eq!(da["outputs"][0]["sha256"], db["outputs"][0]["sha256"]);
    assert_eq!(da["parameters"], db["parameters"]);
}

#[test]
fn manifest_records_digest_and_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("law.csv");
    let out = run(&[
        "dist", "--profile", "const", "--lambda", "0.25", "--n", "2", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("law.csv.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["tool"], "exotic-walks");
    assert_eq!(manifest["subcommand"], "dist");
    assert_eq!(manifest["parameters"]["n"], 2);
    let bytes = std::fs::read(&path).unwrap();
    use sha2::Digest;
    let digest = format!("{:x}", sha2::Sha256::digest(&bytes));
    assert_eq!(manifest["outputs"][0]["sha256"], serde_json::json!(digest));
}
