use std::process::{Command, Output};

use gasf_core::springer::FiberReportJson;

fn gasf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gasf"))
        .args(args)
        .env_remove("SPRINGER_TRUNCATION")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const DIAG_PI_1: &str =
    r#"{"model":"concrete","mu":["1","0"],"units":[{"coeffs":["1"]},{"coeffs":["1"]}]}"#;

#[test]
fn coxeter_count_of_a3() {
    let o = gasf(&["cox", "count", "--datum", "A3"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "4"));
    let o = gasf(&["cox", "count", "--type", "A3*B2"]);
    assert_eq!(stdout(&o).trim(), "8");
}

#[test]
fn coxeter_enum_lists_reduced_words() {
    let o = gasf(&["cox", "enum", "--type", "B3"]);
    let words: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(words.len(), 4);
    assert!(words.iter().all(|w| w.matches('s').count() == 3));
}

#[test]
fn report_for_the_gl2_fixture() {
    let path = std::env::temp_dir().join("gasf-cli-diag-pi-1.json");
    std::fs::write(&path, DIAG_PI_1).unwrap();
    let o = gasf(&[
        "springer",
        "report",
        "--datum",
        "GL2",
        "--gamma",
        path.to_str().unwrap(),
        "--lambda",
        "1,0",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let report: FiberReportJson = serde_json::from_str(&text).unwrap();
    assert!(report.nonempty);
    assert_eq!(report.dim_total.as_ref().unwrap().value, "0");
    assert_eq!(report.d.as_deref(), Some("-1"));
    assert_eq!(report.zero_dimensional, Some(true));
    assert_eq!(
        serde_json::to_string_pretty(&report).unwrap(),
        text.trim_end()
    );
}

#[test]
fn empty_fiber_reports_only_nonemptiness() {
    let o = gasf(&[
        "springer", "report", "--datum", "GL2", "--gamma", DIAG_PI_1, "--lambda", "2,-2", "--json",
    ]);
    let report: FiberReportJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!report.nonempty && report.d.is_none() && report.dim_total.is_none());
}

#[test]
fn multiplicity_table_columns_agree() {
    let o = gasf(&["mult", "table", "--datum", "A2", "--lambda", "1,1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "type\tlambda\tmu\tm_freudenthal\tm_kostant\tagree"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[3] == r[4] && r[5] == "true"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&gasf(&["cox", "count", "--datum", "A3", "--frobnicate"])),
        1
    );
    assert_eq!(code(&gasf(&["cox", "count", "--datum", "Q9"])), 1);
    assert_eq!(code(&gasf(&["series", "valuation", "{not json"])), 1);
    assert_eq!(code(&gasf(&["--help"])), 0);
    assert_eq!(code(&gasf(&["--version"])), 0);
    let o = gasf(&[
        "springer", "report", "--datum", "GL2", "--gamma", DIAG_PI_1, "--lambda", "0,1",
    ]);
    assert_eq!(code(&o), 2);
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "NotDominant");
    let o = gasf(&["strata", "approx", "--datum", "GL2", "--nu", "1/2,0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn randomized_suites_need_a_seed() {
    assert_eq!(
        code(&gasf(&[
            "verify",
            "equivalence",
            "--datum",
            "GL2",
            "--trials",
            "5"
        ])),
        1
    );
    let a = gasf(&[
        "verify",
        "equivalence",
        "--datum",
        "GL2",
        "--trials",
        "10",
        "--seed",
        "7",
    ]);
    let b = gasf(&[
        "verify",
        "equivalence",
        "--datum",
        "GL2",
        "--trials",
        "10",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&a), 0);
    let strip = |o: &Output| {
        stdout(o)
            .split('\t')
            .filter(|f| !f.ends_with("ms"))
            .collect::<Vec<_>>()
            .join("\t")
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn deterministic_output() {
    let args = ["strata", "approx", "--datum", "A2", "--nu", "1/2,1/3"];
    assert_eq!(gasf(&args).stdout, gasf(&args).stdout);
    assert_eq!(
        stdout(&gasf(&args)).trim(),
        r#"{"nu":["1/2","1/3"],"stratum":["1","1"],"witness_chain":[["1","1"]]}"#
    );
}

#[test]
fn lower_bound_scan_tsv() {
    let o = gasf(&[
        "springer",
        "verify-lower-bound",
        "--datum",
        "G2",
        "--radius",
        "2",
        "--tsv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("lambda\tmu\tmultiplicity\tkostant\tbound\tstatus"));
    assert!(!text.contains("FAILED"));
}

#[test]
fn truncation_variable_applies_to_inversion() {
    let o = Command::new(env!("CARGO_BIN_EXE_gasf"))
        .args(["series", "inv", r#"{"coeffs":["1","1"]}"#])
        .env("SPRINGER_TRUNCATION", "3")
        .output()
        .unwrap();
    assert_eq!(
        stdout(&o).trim(),
        r#"{"lead":0,"coeffs":["1","-1","1"],"trunc":3}"#
    );
    let o = Command::new(env!("CARGO_BIN_EXE_gasf"))
        .args(["series", "inv", r#"{"coeffs":["1","1"]}"#])
        .env("SPRINGER_TRUNCATION", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_all_small() {
    let o = gasf(&["verify", "all", "--small"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 11);
}
