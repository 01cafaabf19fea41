//! End-to-end tests against the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_berezin-lab"));
    c.env_remove("BEREZIN_LAB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for p in [&p1, &p2] {
        let out = run(&[
            "gen",
            "--class",
            "general",
            "--n",
            "4",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{out:?}");
    }
    let a = std::fs::read_to_string(&p1).unwrap();
    let b = std::fs::read_to_string(&p2).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn gen_selfadjoint_is_hermitian() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("h.json");
    let out = run(&[
        "gen",
        "--class",
        "selfadjoint",
        "--n",
        "3",
        "--seed",
        "1",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let a = rows[i][j].as_array().unwrap();
            let b = rows[j][i].as_array().unwrap();
            assert_eq!(a[0].as_f64(), b[0].as_f64());
            assert_eq!(a[1].as_f64().unwrap(), -b[1].as_f64().unwrap());
        }
    }
}

/// Write the 2x2 lower shift [[0,0],[1,0]] as matrix JSON.
fn write_jordan(path: &Path) {
    std::fs::write(
        path,
        r#"{"n": 2, "rows": [[[0.0,0.0],[0.0,0.0]],[[1.0,0.0],[0.0,0.0]]]}"#,
    )
    .unwrap();
}

#[test]
fn check_jordan_block_holds_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("j.json");
    write_jordan(&p);
    let out = run(&["check", "--ops", p.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("operator,bound_id,"));
    let slack_col = header.split(',').position(|c| c == "slack").unwrap();
    let holds_col = header.split(',').position(|c| c == "holds").unwrap();
    let mut min_slack = f64::INFINITY;
    let mut rows = 0;
    for line in lines.filter(|l| !l.is_empty()) {
        rows += 1;
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[holds_col], "true", "row: {line}");
        min_slack = min_slack.min(cells[slack_col].parse::<f64>().unwrap());
    }
    assert!(rows > 100, "expected a full grid of rows, got {rows}");
    // tightest default-grid instance: r=2, alpha=1/2 with the squared term,
    // where lhs = 1/16 and rhs = 1/8
    assert!(
        (min_slack - 0.0625).abs() < 1e-9,
        "min slack over the default grid should be 1/16, got {min_slack}"
    );
}

#[test]
fn check_rejects_dimension_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("j.json");
    write_jordan(&p);
    let out = run(&["check", "--ops", p.to_str().unwrap(), "--dim", "3"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(stdout(&out).is_empty(), "no report on usage error");
}

#[test]
fn check_rejects_malformed_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"n": 2, "rows": [[[0.0,0.0]]]}"#).unwrap();
    let out = run(&["check", "--ops", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn check_json_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("j.json");
    write_jordan(&p);
    let json_out = run(&["check", "--ops", p.to_str().unwrap(), "--format", "json"]);
    let csv_out = run(&["check", "--ops", p.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(json_out.status.code(), Some(0));
    assert_eq!(csv_out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&json_out)).unwrap();
    let csv_text = stdout(&csv_out);
    let mut csv_lines = csv_text.lines();
    let header: Vec<&str> = csv_lines.next().unwrap().split(',').collect();
    let lhs_col = header.iter().position(|c| *c == "lhs").unwrap();
    let rhs_col = header.iter().position(|c| *c == "rhs").unwrap();
    let csv_rows: Vec<&str> = csv_lines.filter(|l| !l.is_empty()).collect();
    assert_eq!(rows.len(), csv_rows.len());
    for (j, c) in rows.iter().zip(&csv_rows) {
        let cells: Vec<&str> = c.split(',').collect();
        assert_eq!(
            j["lhs"].as_f64().unwrap(),
            cells[lhs_col].parse::<f64>().unwrap(),
            "json {j} vs csv {c}"
        );
        assert_eq!(
            j["rhs"].as_f64().unwrap(),
            cells[rhs_col].parse::<f64>().unwrap(),
            "json {j} vs csv {c}"
        );
    }
}

#[test]
fn check_writes_output_file_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("j.json");
    write_jordan(&p);
    let report = dir.path().join("report.json");
    let out = run(&[
        "check",
        "--ops",
        p.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(!rows.is_empty());
    // no stray temp file left behind
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn lemmas_pass_and_are_deterministic() {
    let run_once = || {
        let out = run(&["lemmas", "--trials", "200", "--seed", "5", "--format", "csv"]);
        assert_eq!(out.status.code(), Some(0), "{out:?}");
        stdout(&out)
    };
    let a = run_once();
    let b = run_once();
    assert_eq!(a, b);
    for line in a.lines().skip(1).filter(|l| !l.is_empty()) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[2], "200", "all trials pass: {line}");
        assert_eq!(cells[3], "0", "no failures: {line}");
    }
}

#[test]
fn sharpness_reports_every_bound() {
    let out = run(&["sharpness", "--trials", "3", "--dim", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rows.len() >= 10, "one row per bound, got {}", rows.len());
    for row in &rows {
        assert!(row["min_slack"].as_f64().unwrap() >= -1e-9);
        assert!(row["spec"]["seed"].is_u64());
    }
}

#[test]
fn thread_cap_env_is_validated() {
    let out = bin()
        .args(["lemmas", "--trials", "1"])
        .env("BEREZIN_LAB_THREADS", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let ok = bin()
        .args(["lemmas", "--trials", "1"])
        .env("BEREZIN_LAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(&["check"]);
    assert_eq!(out.status.code(), Some(1), "no operators is a usage error");
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1), "unknown subcommand");
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0), "help is not an error");
}
