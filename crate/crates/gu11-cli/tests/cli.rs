//! Process-level tests of the `gu11` binary: exit codes, JSON shape, and
//! byte determinism.

use std::process::{Command, Output};

use gu11_cli::report::{classgroup_checks, Report};

fn gu11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gu11"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let a = gu11(&["verify-all", "--max-n", "6"]);
    let b = gu11(&["verify-all", "--max-n", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn verify_all_json_shape() {
    let out = gu11(&["verify-all", "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("valid JSON");
    assert_eq!(v["version"], 1);
    let checks = v["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["id"].is_string());
        assert!(c["paper_ref"].is_string());
        assert!(c["detail"].is_string());
        let status = c["status"].as_str().unwrap();
        assert!(matches!(status, "pass" | "fail" | "flagged"));
    }
    // max-n 2 keeps only the first two fields' records.
    assert!(checks.iter().any(|c| c["id"].as_str().unwrap().ends_with(".n02")));
    assert!(!checks.iter().any(|c| c["id"].as_str().unwrap().ends_with(".n03")));
}

#[test]
fn verify_all_writes_report_file_matching_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = gu11(&["verify-all", "--max-n", "3", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert_eq!(on_disk, stdout_str(&out));
}

#[test]
fn unwritable_report_path_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing-dir").join("report.json");
    let out = gu11(&["verify-all", "--max-n", "1", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cannot write report"), "stderr: {err}");
}

#[test]
fn subcommand_output_matches_library_catalog() {
    let out = gu11(&["classgroup", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = Report::new(classgroup_checks(5)).to_json();
    assert_eq!(stdout_str(&out), expected);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["classgroup", "--n", "12"],
        vec!["lattice", "--n", "0"],
        vec!["cm", "--n", "18"],
        vec!["honda-tate", "--n", "1", "--p", "7"],
        vec!["honda-tate", "--n", "1", "--p", "5", "--aux", "11,11"],
        vec!["invariants", "--level", "5"],
        vec!["invariants", "--level", "2", "--p", "10"],
        vec!["qseries", "--prec", "1"],
        vec!["report", "--n", "12"],
        vec!["report", "--n", "1", "--p", "3"],
    ] {
        let out = gu11(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(!out.stderr.is_empty(), "args: {args:?}");
    }
}

#[test]
fn unknown_flags_exit_two() {
    let out = gu11(&["verify-all", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn honda_tate_smoke() {
    let out = gu11(&["honda-tate", "--n", "3", "--p", "7", "--aux", "19"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "hondatate.bijection.n03",
            "hondatate.classify.n03",
            "hondatate.minimality.n03",
            "hondatate.validate.n03"
        ]
    );
}

#[test]
fn report_subcommand_emits_case_split() {
    let out = gu11(&["report", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["sh_k0"]["descriptor"], "Components(1)");
    assert_eq!(v["sh_k1_component"]["ring"], "q2,D2");

    let flagged = gu11(&["report", "--n", "10", "--p", "7"]);
    assert_eq!(flagged.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&flagged)).unwrap();
    assert_eq!(v["p"], 7);
    assert_eq!(v["sh_k1_component"]["status"], "flagged");
}

#[test]
fn invariants_and_qseries_smoke() {
    for args in [
        vec!["invariants", "--level", "1"],
        vec!["invariants", "--level", "2", "--max-weight", "12", "--max-denom", "1"],
        vec!["qseries", "--prec", "40"],
    ] {
        let out = gu11(&args);
        assert_eq!(out.status.code(), Some(0), "args: {args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
        assert!(v["checks"].as_array().is_some_and(|c| !c.is_empty()));
    }
}
