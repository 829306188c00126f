//! End-to-end checks of the binary: output contents, exit codes, and
//! byte-level determinism of structured output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn radnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radnor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("radnor-cli-{}-{name}", std::process::id()))
}

#[test]
fn height_reports_exact_log_and_degree() {
    let out = radnor(&["height", "(5/7)^(1/11)", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("degree: 11"), "{s}");
    assert!(s.contains("exact: log(7)"), "{s}");
}

#[test]
fn corollary_bound_matches_reference_digits() {
    let out = radnor(&["corollary-bound", "--p", "5", "--d", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.120707843"), "{}", stdout(&out));
}

#[test]
fn classify_case_a_structured() {
    let out = radnor(&["classify", "--case", "A", "--c", "2", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("i_b = [0, inf)"), "{s}");
    assert!(s.contains("i_n = (0, inf)"), "{s}");
    assert!(s.contains("nor = 2"), "{s}");
}

#[test]
fn mahler_golden_ratio_polynomial() {
    let out = radnor(&["mahler", "--poly", "-1,-1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.481211825"), "{}", stdout(&out));
}

#[test]
fn oracle_height_prints_minimal_polynomial() {
    let out = radnor(&["oracle-height", "--expr", "(2)^(1/2) + (3)^(1/2)"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("x^4 - 10*x^2 + 1"), "{s}");
    assert!(s.contains("0.573107917"), "{s}");
}

#[test]
fn tower_generate_verify_northcott_roundtrip() {
    let spec = temp_path("towerA.txt");
    let spec_arg = spec.to_str().unwrap();
    let gen = radnor(&[
        "gen-tower", "--case", "A", "--c", "0.05", "--levels", "2", "--out", spec_arg,
    ]);
    assert_eq!(gen.status.code(), Some(0), "{}", String::from_utf8_lossy(&gen.stderr));

    let verify = radnor(&["verify-tower", "--spec", spec_arg]);
    assert_eq!(verify.status.code(), Some(0));
    assert!(stdout(&verify).contains("verdict: PASS"), "{}", stdout(&verify));

    let nc = radnor(&["northcott", "--spec", spec_arg, "--delta", "0", "--format", "csv"]);
    assert_eq!(nc.status.code(), Some(0));
    let s = stdout(&nc);
    assert!(s.starts_with("delta,level,d,p,q,lower_lo,lower_hi,upper_lo,upper_hi\n"), "{s}");
    assert_eq!(s.lines().count(), 3, "{s}");

    // Same inputs and configuration must reproduce byte-identical output.
    let nc2 = radnor(&["northcott", "--spec", spec_arg, "--delta", "0", "--format", "csv"]);
    assert_eq!(nc.stdout, nc2.stdout);

    let _ = std::fs::remove_file(&spec);
}

#[test]
fn tampered_tower_fails_with_exit_one() {
    let spec = temp_path("tampered.txt");
    let gen = radnor(&[
        "gen-tower", "--case", "A", "--c", "0.05", "--levels", "1", "--out",
        spec.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let doc = std::fs::read_to_string(&spec).unwrap();
    // Push q past 2p so the window check fails under certification.
    let doc = doc.replace("q = 7", "q = 13");
    std::fs::write(&spec, doc).unwrap();

    let verify = radnor(&["verify-tower", "--spec", spec.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(1));
    assert!(stdout(&verify).contains("verdict: FAIL"), "{}", stdout(&verify));
    let _ = std::fs::remove_file(&spec);
}

#[test]
fn cross_check_small_run_passes() {
    let out = radnor(&["cross-check", "--p", "5", "--q", "7", "--d", "5", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all 4 samples exceed the bound"), "{}", stdout(&out));
}

#[test]
fn demo_negative_emits_csv_rows() {
    let out = radnor(&[
        "demo-negative", "--gamma", "-1/2", "--n", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.starts_with("n,a,"), "{s}");
    assert_eq!(s.lines().count(), 3, "{s}");
    assert!(s.lines().all(|l| !l.contains("false")), "{s}");
}

#[test]
fn malformed_input_exits_three() {
    for args in [
        &["height", "bogus"][..],
        &["mahler", "--poly", "1,,2"][..],
        &["gen-tower", "--case", "Z", "--levels", "1"][..],
        &["oracle-height", "--expr", "(2)^(1/300)"][..],
        &["corollary-bound", "--p", "5", "--d", "1"][..],
    ] {
        let out = radnor(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn disc_is_exact() {
    let out = radnor(&["disc", "--poly", "-75,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("discriminant: -151875"), "{}", stdout(&out));
}
