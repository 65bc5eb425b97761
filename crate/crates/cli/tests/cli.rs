//! End-to-end tests of the `kummer` binary: exit codes, output contracts,
//! determinism, and the JSON schema.

use std::process::{Command, Output};

use kummer_lattice::report::VerificationReport;

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_default_passes_and_reports_pairing() {
    let out = kummer(&["verify", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let s = stdout_of(&out);
    assert!(s.starts_with("k = 2, t = 1\n"));
    assert!(s.contains("A1.A1' = 10"));
    assert!(s.contains("[pass]"));
    assert!(!s.contains("[fail]"));
    assert!(s.lines().last().unwrap().starts_with("result: pass"));
}

#[test]
fn verify_k1_reports_theta_extension() {
    let out = kummer(&["verify", "--k", "1", "--suites", "isometry"]);
    assert_eq!(code(&out), 0);
    let s = stdout_of(&out);
    assert!(s.contains("theta_extends = true (expected true)"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&kummer(&["verify", "--k", "0"])), 2);
    assert_eq!(code(&kummer(&["verify", "--k", "2", "--t", "17"])), 2);
    assert_eq!(code(&kummer(&["verify", "--k", "2", "--suites", "spectra"])), 2);
    assert_eq!(code(&kummer(&["sweep", "--k-min", "3", "--k-max", "2"])), 2);
}

#[test]
fn budget_exhaustion_exits_three_with_partial_report() {
    let out = kummer(&["verify", "--k", "2", "--suites", "ns", "--budget", "10"]);
    assert_eq!(code(&out), 3);
    let s = stdout_of(&out);
    assert!(s.contains("ns_rank"));
    assert!(s.contains("result:"));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("budget"));
}

#[test]
fn fault_injection_flips_exit_code() {
    let out = kummer(&["verify", "--k", "2", "--suites", "", "--inject-fault"]);
    assert_eq!(code(&out), 1);
    let s = stdout_of(&out);
    assert!(s.contains("[fail]"));
    assert!(s.contains("fault.a_prime_square = -4 (expected -2)"));
}

#[test]
fn empty_suite_selection_passes_with_zero_checks() {
    let out = kummer(&["verify", "--k", "2", "--suites", ""]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("result: pass (0 checks)"));
}

#[test]
fn io_error_exits_four() {
    let out = kummer(&[
        "verify",
        "--k",
        "2",
        "--suites",
        "",
        "--out",
        "/nonexistent-dir/report.txt",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn json_report_has_schema_and_round_trips() {
    let out = kummer(&["verify", "--k", "2", "--format", "json", "--suites", "isometry"]);
    assert_eq!(code(&out), 0);
    let s = stdout_of(&out);

    let report: VerificationReport = serde_json::from_str(&s).unwrap();
    assert_eq!(report.k, 2);
    assert_eq!(report.t, Some(1));
    let salem = report
        .checks
        .iter()
        .find(|c| c.name == "salem_factor")
        .expect("salem_factor check present");
    assert_eq!(salem.expected, "T^2-14T+1");
    assert_eq!(salem.actual, "T^2-14T+1");
    assert!(report.checks.iter().all(|c| !c.citation.is_empty()));

    let value: serde_json::Value = serde_json::from_str(&s).unwrap();
    for check in value["checks"].as_array().unwrap() {
        let status = check["status"].as_str().unwrap();
        assert!(
            matches!(status, "pass" | "fail" | "not-applicable" | "paper-established"),
            "unexpected status {status}"
        );
    }

    let mut reserialized = serde_json::to_string_pretty(&report).unwrap();
    reserialized.push('\n');
    assert_eq!(reserialized, s, "parse(serialize(r)) = r at the byte level");
}

#[test]
fn reports_are_deterministic_across_runs() {
    let a = kummer(&["verify", "--k", "2", "--suites", "nikulin"]);
    let b = kummer(&["verify", "--k", "2", "--suites", "nikulin"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout_of(&a), stdout_of(&b), "text output is byte-identical");

    let a = kummer(&["verify", "--k", "2", "--suites", "nikulin", "--format", "json"]);
    let b = kummer(&["verify", "--k", "2", "--suites", "nikulin", "--format", "json"]);
    let mut ra: VerificationReport = serde_json::from_str(&stdout_of(&a)).unwrap();
    let mut rb: VerificationReport = serde_json::from_str(&stdout_of(&b)).unwrap();
    ra.runtime_ms = 0;
    rb.runtime_ms = 0;
    assert_eq!(
        serde_json::to_string(&ra).unwrap(),
        serde_json::to_string(&rb).unwrap(),
        "identical up to runtime_ms"
    );
}

#[test]
fn sweep_prints_headline_tables() {
    let out = kummer(&["sweep", "--k-min", "1", "--k-max", "4"]);
    assert_eq!(code(&out), 0);
    let s = stdout_of(&out);
    assert!(s.contains("A1.A1' = 6 10 14 18"));
    assert!(s.contains("L^2 = 4 12 24 40"));
    assert!(s.contains("salem_trace = 2 14 34 62"));
    assert!(s.contains("verify = pass pass pass pass"));
    assert!(s.ends_with("result: pass\n"));
}

#[test]
fn sweep_single_k_reports_structure_count() {
    let out = kummer(&["sweep", "--k-min", "2", "--k-max", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("kummer_structure_count = 2"));
}

#[test]
fn pell_subcommand_lists_decompositions() {
    let out = kummer(&["pell", "--k", "2", "--m-max", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("(49, 20, 10, 1)"));
}

#[test]
fn glue_subcommand_reports_overlattice() {
    let out = kummer(&["glue", "--k", "1"]);
    assert_eq!(code(&out), 0);
    let s = stdout_of(&out);
    assert!(s.contains("glue.glued_rank = 22"));
    assert!(s.contains("glue.glued_signature = (3, 19)"));
    assert!(s.contains("glue.theta_glued_trace = 10"));
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = kummer(&[
        "verify",
        "--k",
        "1",
        "--suites",
        "covers",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    let report: VerificationReport = serde_json::from_str(&content).unwrap();
    assert!(report.passed());
    assert!(report.checks.iter().any(|c| c.name == "covers.chi"));
}
