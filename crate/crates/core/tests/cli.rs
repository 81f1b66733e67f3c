use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn catconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catconv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/expected.json")
}

#[test]
fn eval_and_table_stdout() {
    let out = catconv(&["eval", "--n", "3", "--a", "2"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "252\n"));
    assert_eq!(
        stdout(&catconv(&["eval", "--n", "0", "--a", "-9/4"])),
        "1\n"
    );
    assert_eq!(
        stdout(&catconv(&[
            "eval", "--n", "2", "--a", "-1", "--method", "hyper"
        ])),
        "8\n"
    );
    let table = catconv(&["table", "--n-max", "3", "--a", "-1"]);
    assert_eq!(stdout(&table), "n,value\n0,1\n1,0\n2,8\n3,0\n");
}

#[test]
fn every_method_agrees_through_the_binary() {
    let methods = [
        "direct",
        "weighted-catalan",
        "recurrence",
        "hyper",
        "identity",
        "narayana",
        "series",
    ];
    let values: Vec<String> = methods
        .iter()
        .map(|m| {
            stdout(&catconv(&[
                "eval", "--n", "9", "--a", "-4/9", "--method", m,
            ]))
            .to_string()
        })
        .collect();
    assert!(values.iter().all(|v| v == &values[0]), "{values:?}");
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["eval", "--n", "3", "--a", "1.5"][..],
        &["eval", "--n", "3", "--a", "1/0"],
        &["eval", "--n", "3"],
        &["table", "--n-max", "x", "--a", "1"],
        &["frobnicate"],
        &["asym", "--n", "1", "--a", "0"],
        &["simulate", "--n", "3", "--a", "-2"],
    ] {
        let out = catconv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn audit_writes_report_and_honours_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let md = dir.path().join("report.md");
    let expect = fixture();
    let out = catconv(&[
        "audit",
        "--out",
        json.to_str().unwrap(),
        "--markdown",
        md.to_str().unwrap(),
        "--expect",
        expect.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["verdicts"].as_array().unwrap().len(), 13);
    assert_eq!(report["verdicts"][1]["witness"]["lhs"], "4");
    assert!(std::fs::read_to_string(&md)
        .unwrap()
        .contains("| C4 | refuted |"));

    // A report file is itself a valid expectation.
    let again = catconv(&[
        "audit",
        "--out",
        json.to_str().unwrap(),
        "--expect",
        json.to_str().unwrap(),
    ]);
    assert_eq!(again.status.code(), Some(0));
    // The summary on stdout carries no timestamp, so it is stable.
    assert_eq!(stdout(&out), stdout(&again));

    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, r#"{"C1": "confirmed"}"#).unwrap();
    let mismatch = catconv(&[
        "audit",
        "--out",
        json.to_str().unwrap(),
        "--expect",
        wrong.to_str().unwrap(),
    ]);
    assert_eq!(mismatch.status.code(), Some(3));
}

#[test]
fn audit_io_failures_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let unwritable = dir.path().join("missing-dir").join("report.json");
    assert_eq!(
        catconv(&[
            "audit",
            "--n-max",
            "3",
            "--out",
            unwritable.to_str().unwrap()
        ])
        .status
        .code(),
        Some(4)
    );
    let absent = dir.path().join("absent.json");
    let out = catconv(&[
        "audit",
        "--out",
        "/dev/null",
        "--expect",
        absent.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn simulate_is_deterministic_and_accurate() {
    let args = [
        "simulate",
        "--n",
        "2",
        "--a",
        "1",
        "--samples",
        "1000000",
        "--seed",
        "42",
    ];
    let first = catconv(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, catconv(&args).stdout);
    let z: f64 = stdout(&first)
        .lines()
        .find_map(|l| l.strip_prefix("z "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(z.abs() < 5.0, "z = {z}");
    assert!(stdout(&first).contains("exact 16\n"));
}

#[test]
fn asym_difference_matches_sqrt_pi_n() {
    let out = catconv(&["asym", "--n", "100", "--a", "1", "--model", "paper"]);
    let diff: f64 = stdout(&out)
        .lines()
        .find_map(|l| l.strip_prefix("difference "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((diff - 0.5 * (100.0 * std::f64::consts::PI).ln()).abs() < 1e-9);
}
