use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanbicat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn clean() -> String {
    golden("clean.json").to_str().unwrap().to_string()
}

#[test]
fn clean_instance_passes_every_suite() {
    let file = clean();
    for suite in ["axioms", "comonads", "tabulation", "biequivalence", "direct-sums", "all"] {
        let out = run(&["check", &file, "--suite", suite, "--bound", "3"]);
        assert_eq!(out.status.code(), Some(0), "suite {suite}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["holds"], true);
        assert_eq!(report["bound"], 3);
    }
}

#[test]
fn corrupted_witness_fails_with_counterexample() {
    let out = run(&["check", golden("corrupted.json").to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<_> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["holds"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["counterexample"].is_object()));
}

#[test]
fn malformed_instance_is_rejected() {
    let out = run(&["check", golden("malformed.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["check", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let file = clean();
    for format in ["json", "text"] {
        let a = run(&["check", &file, "--format", format]);
        let b = run(&["check", &file, "--format", format]);
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn text_report_ends_with_summary() {
    let out = run(&["check", &clean(), "--format", "text", "--suite", "axioms"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("suite axioms: "), "{last}");
    assert!(last.contains("0 failed"));
    assert!(text.lines().any(|l| l.starts_with("PASS [")));
}

#[test]
fn large_bound_is_capped_with_warning() {
    let out = run(&["check", &clean(), "--suite", "axioms", "--bound", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capped"));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["bound"], 6);
}

#[test]
fn saved_report_validates() {
    let out = run(&["check", &clean()]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let check = run(&["validate-report", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));

    std::fs::write(&path, b"{\"suite\": 3}").unwrap();
    let check = run(&["validate-report", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(2));
}

#[test]
fn empty_file_is_an_empty_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, b"").unwrap();
    let out = run(&["check", path.to_str().unwrap(), "--suite", "axioms", "--bound", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tabulate_and_compose_print_json() {
    let file = clean();
    let out = run(&["tabulate", &file, "r"]);
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
    let out = run(&["compose", &file, "graph_g", "graph_collapse"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["compose", &file, "graph_g", "no_such_span"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eilenberg_moore_needs_a_copoint() {
    let file = clean();
    assert_eq!(run(&["em", &file, "G"]).status.code(), Some(0));
    let out = run(&["em", &file, "r"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no copoint"));
}
