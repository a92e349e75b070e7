use std::fs;
use std::process::{Command, Output};

use srujac::constructions::{counterexample_m1, counterexample_m8};
use srujac::io::write_matrix;

fn srujac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srujac")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn jacobian_of_u24() {
    let o = srujac(&["jacobian", "--family", "u24", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("divisors: 1+w, 2+2w"));
    assert!(out.contains("abelian: Z/6 + Z/6"));
    assert!(out.contains("order: 36"));
    assert!(out.contains("bases: 6"));
    assert!(out.contains("verified"));
}

#[test]
fn identity_file_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id.hmat");
    fs::write(&path, "3 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let o = srujac(&["jacobian", "--file", path.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("abelian: 0"), "{out}");
    assert!(out.contains("order: 1"));
}

#[test]
fn invalid_matrix_reports_minor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.hmat");
    fs::write(&path, "2 3\n1 1 0\n-1 1 1\n").unwrap();
    let o = srujac(&["jacobian", "--file", path.to_str().unwrap(), "--full"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("minor rows {1,2} cols {1,2} = 2"), "{}", stderr(&o));
    let o = srujac(&["validate", "--file", path.to_str().unwrap(), "--validation", "entries"]);
    assert!(o.status.success());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(srujac(&["jacobian"]).status.code(), Some(2));
    assert_eq!(srujac(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(srujac(&["jacobian", "--family", "t_r:1"]).status.code(), Some(2));
    assert_eq!(srujac(&["jacobian", "--family", "u24", "--validation", "half"]).status.code(), Some(2));
}

#[test]
fn guard_is_reported_with_guidance() {
    let o = srujac(&["validate", "--family", "t_r:8", "--full"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hint"));
    let o = srujac(&["jacobian", "--family", "t_r:8", "--validation", "entries"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("snf: (1, 2, 10, 10, 10, 10, 10+10w, 40+40w)"));
}

#[test]
fn bases_and_projection() {
    let o = srujac(&["bases", "--family", "ag23", "--count"]);
    assert_eq!(stdout(&o).trim(), "72");
    let o = srujac(&["bases", "--family", "u24"]);
    assert!(stdout(&o).starts_with("1 2\n1 3\n"));
    let o = srujac(&["projection", "--family", "u24", "--verify-averaging"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("N = 6·P verified"));
}

#[test]
fn compare_counterexample_pair() {
    let o = srujac(&["compare", "--family", "counterexample_m", "--family", "counterexample_mprime"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("E-module: different; abelian: different"));
    let o = srujac(&["compare", "--family", "u24", "--family", "t_r:2"]);
    assert!(stdout(&o).contains("E-module: same; abelian: same"));
}

#[test]
fn twosum_reproduces_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("m1.hmat");
    let p8 = dir.path().join("m8.hmat");
    let out = dir.path().join("mprime.hmat");
    write_matrix(&counterexample_m1(), &p1).unwrap();
    write_matrix(&counterexample_m8(), &p8).unwrap();
    let o = srujac(&[
        "twosum",
        "--file1",
        p1.to_str().unwrap(),
        "--file2",
        p8.to_str().unwrap(),
        "--basepoint1",
        "1",
        "--basepoint2",
        "1",
        "--conjugate-second",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = srujac(&["jacobian", "--file", out.to_str().unwrap()]);
    assert!(stdout(&o).contains("divisors: 3, 1029"), "{}", stdout(&o));
    let o = srujac(&[
        "compare",
        "--file",
        out.to_str().unwrap(),
        "--family",
        "counterexample_mprime",
    ]);
    assert!(stdout(&o).contains("E-module: same"));
}

#[test]
fn gen_then_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.hmat");
    let o = srujac(&["gen", "t_r:3", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("3 8\n1 0 0 1 1 w w 0\n"), "{text}");
    let o = srujac(&["validate", "--file", path.to_str().unwrap(), "--full", "--three-connected"]);
    assert!(stdout(&o).contains("3-connected: yes"));
}

#[test]
fn ops_file_keeps_the_jacobian() {
    let dir = tempfile::tempdir().unwrap();
    let ops = dir.path().join("ops.txt");
    fs::write(&ops, "# shuffle\nswap_cols 1 4\nscale_row 2 w^5\npivot 2 1\nscale_col 2 w^2\n").unwrap();
    let o = srujac(&["jacobian", "--family", "ag23", "--ops", ops.to_str().unwrap(), "--full"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("divisors: 2+2w, 2+2w, 6"));
}

#[test]
fn json_payload_is_stable() {
    let a = srujac(&["--json", "jacobian", "--family", "whirl:4"]);
    let b = srujac(&["jacobian", "--family", "whirl:4", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["order"], "2116");
}

#[test]
fn class_command() {
    let o = srujac(&["class", "--family", "u24", "--vector", "0,1,1,w"]);
    assert!(stdout(&o).contains("trivial: yes"), "{}", stdout(&o));
    let o = srujac(&["class", "--family", "u24", "--vector", "-1,0,0,0"]);
    assert!(stdout(&o).contains("trivial: no"));
}
