//! End-to-end checks of the binary: exit codes, output formats, the
//! round-trip contract and byte-level determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn tmp(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("halo-cli-{}-{}", name, std::process::id()));
    let _ = fs::remove_file(&p);
    p
}

/// Cells of a one-record CSV body keyed by header name.
fn csv_record(text: &str) -> Vec<(String, String)> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    let body: Vec<&str> = lines.next().expect("record").split(',').collect();
    assert_eq!(header.len(), body.len(), "ragged csv: {text}");
    header
        .iter()
        .zip(&body)
        .map(|(h, b)| (h.to_string(), b.to_string()))
        .collect()
}

fn field(rec: &[(String, String)], name: &str) -> f64 {
    rec.iter()
        .find(|(h, _)| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
        .1
        .parse()
        .expect("numeric cell")
}

#[test]
fn solve_json_round_trips_through_input_flag() {
    let first = run(&["solve", "--family", "yukawa", "--g", "3"]);
    assert_eq!(code(&first), 0);
    let path = tmp("roundtrip");
    fs::write(&path, &first.stdout).unwrap();
    let second = run(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout, "round-trip must be byte-identical");
    fs::remove_file(&path).unwrap();
}

#[test]
fn input_flag_rejects_extra_request_flags() {
    let first = run(&["solve", "--family", "yukawa", "--g", "3"]);
    let path = tmp("conflict");
    fs::write(&path, &first.stdout).unwrap();
    let out = run(&["solve", "--input", path.to_str().unwrap(), "--g", "4"]);
    assert_eq!(code(&out), 3);
    fs::remove_file(&path).unwrap();
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["reproduce", "--table", "3"],
        vec!["scan", "--fig", "1", "--n-max", "20", "--n-count", "5"],
        vec!["halo", "--family", "wood-saxon", "--A", "25"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?} not deterministic");
    }
}

#[test]
fn output_file_matches_stdout_bytes() {
    let direct = run(&["bounds", "--family", "rational-cubed", "--g", "2"]);
    assert_eq!(code(&direct), 0);
    let path = tmp("outfile");
    let filed = run(&[
        "bounds",
        "--family",
        "rational-cubed",
        "--g",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&filed), 0);
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
    fs::remove_file(&path).unwrap();
}

#[test]
fn wood_saxon_systematics_row_values() {
    let out = run(&["halo", "--family", "wood-saxon", "--A", "50", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let rec = csv_record(&stdout(&out));
    assert!((field(&rec, "e_exact") + 0.070062).abs() < 1e-5);
    assert!((field(&rec, "e_h") + 0.046707).abs() < 1e-5);
    assert!((field(&rec, "ratio_at_e_h") - 2.302281).abs() < 1e-5);
    assert!((field(&rec, "x0") - 11.229146).abs() < 1e-5);
}

#[test]
fn helium_window_edge() {
    let out = run(&[
        "halo", "--family", "lj-pair", "--p-rep", "10", "--p-att", "6", "--units", "helium",
        "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let rec = csv_record(&stdout(&out));
    let e_h = field(&rec, "e_h");
    assert!((e_h + 0.828866).abs() < 1e-5, "window edge {e_h} micro-eV");
}

#[test]
fn missing_state_exits_two() {
    let shallow = run(&["solve", "--family", "yukawa", "--g", "0.5"]);
    assert_eq!(code(&shallow), 2);
    let absent = run(&["solve", "--family", "yukawa", "--g", "9.5", "--ell", "1", "--n", "3"]);
    assert_eq!(code(&absent), 2);
}

#[test]
fn invalid_parameters_exit_three() {
    for args in [
        vec!["solve", "--family", "nosuch", "--g", "3"],
        vec!["solve", "--family", "yukawa"],
        vec!["reproduce"],
        vec!["reproduce", "--table", "7"],
        vec!["reproduce", "--table", "2", "--all"],
        vec!["scan", "--fig", "3"],
        vec!["scan", "--fig", "1", "--source", "mystery"],
        vec!["solve", "--family", "yukawa", "--g", "3", "--format", "yaml"],
        vec!["halo", "--family", "yukawa", "--g", "9.5", "--ell", "1", "--exact"],
        vec!["halo", "--family", "wood-saxon", "--units", "nuclear"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 3, "{args:?} should be invalid");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["solve", "--help"])), 0);
}

#[test]
fn reproduce_table4_all_rows_pass() {
    let out = run(&["reproduce", "--table", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        assert!(row.ends_with(",true"), "row should pass: {row}");
    }
}

#[test]
fn reproduce_table5_fails_only_the_edge_cell() {
    let out = run(&["reproduce", "--table", "5"]);
    assert_eq!(code(&out), 5);
    let text = stdout(&out);
    let mut failing: Vec<String> = Vec::new();
    for row in text.lines().skip(1) {
        if row.ends_with(",false") {
            failing.push(row.split(',').next().unwrap().to_string());
        }
    }
    assert_eq!(failing, ["9.085"], "only the hypersensitive row misses print precision");
    let edge = text.lines().find(|l| l.starts_with("9.085")).unwrap();
    let computed: f64 = edge.split(',').nth(1).unwrap().parse().unwrap();
    assert!((computed - 0.036569146).abs() < 1e-8, "converged value {computed}");
}

#[test]
fn scan_empty_range_emits_header_only() {
    let out = run(&["scan", "--fig", "1", "--n-count", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n,N,s\n");
}

#[test]
fn scan_fig2_endpoint_matches_closed_form() {
    let out = run(&[
        "scan", "--fig", "2", "--n-min", "5", "--n-max", "5", "--n-count", "1", "--levels", "1",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let val: f64 = text.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    let g = (1.5 * std::f64::consts::PI).powi(2);
    assert!((val - 1.0 / (64.0 * g)).abs() < 1e-12);
}

#[test]
fn bounds_report_lists_every_limit() {
    let out = run(&["bounds", "--family", "rational-cubed", "--g", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let ids: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids, ["eq1", "eq2", "eq3", "eq8", "eq10", "eq15", "eq17", "eq18", "eq24"]);
}
