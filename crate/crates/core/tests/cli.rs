//! End-to-end runs of the binary compared with files under tests/golden.
//! Set UPDATE_GOLDEN=1 to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hullkit"));
    cmd.current_dir(root()).args(args).env_remove("HULLKIT_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn compare(name: &str, actual: &str) {
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}; rerun with UPDATE_GOLDEN=1", path.display()));
    assert!(expected == actual, "{name} differs from golden\n--- expected\n{expected}\n--- actual\n{actual}");
}

fn golden_env(name: &str, args: &[&str], env: &[(&str, &str)], code: i32) {
    let (got, stdout, stderr) = run(args, env);
    assert_eq!(got, code, "{name}: exit code\nstdout:\n{stdout}\nstderr:\n{stderr}");
    compare(
        &format!("{name}.txt"),
        &format!("exit: {got}\n--- stdout\n{stdout}--- stderr\n{stderr}"),
    );
}

fn golden(name: &str, args: &[&str], code: i32) {
    golden_env(name, args, &[], code);
}

#[test]
fn make_writes_loadable_algebras() {
    golden("make_sym3", &["make", "sym:3"], 0);
    let (code, stdout, _) = run(&["make", "set:3"], &[]);
    assert_eq!(code, 0);
    let on_disk = std::fs::read_to_string(root().join("tests/data/set3.json")).unwrap();
    assert_eq!(stdout, on_disk);
    golden("make_unknown", &["make", "klein"], 1);
}

#[test]
fn end_command() {
    golden("end_s3", &["end", "tests/data/s3.json"], 0);
    golden("end_s3_json", &["--format", "json", "end", "tests/data/s3.json"], 0);
    golden("end_s3_gens", &["end", "tests/data/s3.json", "--gens", "2,3"], 0);
    golden("end_set3", &["end", "tests/data/set3.json"], 0);
    golden("end_builtin_gf2_2", &["--format", "json", "end", "builtin:vector:2:2"], 0);
    golden("end_bad_json", &["end", "tests/data/bad.json"], 1);
    golden("end_missing_file", &["end", "tests/data/nope.json"], 1);
    golden("end_too_large", &["end", "builtin:set:9"], 3);
}

#[test]
fn end_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eggbox.dot");
    let (code, _, stderr) = run(&["end", "tests/data/set3.json", "--dot", out.to_str().unwrap()], &[]);
    assert_eq!(code, 0, "{stderr}");
    compare("end_set3_dot.dot", &std::fs::read_to_string(&out).unwrap());
}

#[test]
fn hull_command() {
    golden("hull_set3_rank3", &["--format", "json", "hull", "tests/data/set3.json", "--ideal", "rank:3"], 0);
    golden("hull_set3_rank2", &["hull", "tests/data/set3.json", "--ideal", "rank:2"], 0);
    golden("hull_s3_non_units", &["hull", "tests/data/s3.json", "--ideal", "non-units"], 0);
    golden("hull_gf2_2_rank2", &["hull", "tests/data/gf2_2.json", "--ideal", "rank:2"], 0);
    golden("hull_set3_gens", &["hull", "tests/data/set3.json", "--ideal", "gens:0"], 0);
    golden("hull_set3_file", &["hull", "tests/data/set3.json", "--ideal", "tests/data/constants3.json"], 0);
    golden("hull_clifford_minimal", &["hull", "tests/data/clifford.json", "--ideal", "minimal"], 0);
    golden("hull_bad_spec", &["hull", "tests/data/set3.json", "--ideal", "rank:x"], 1);
    golden("hull_not_an_ideal_file", &["hull", "tests/data/s3.json", "--ideal", "tests/data/cycle3.json"], 1);
    golden("hull_units_only", &["hull", "builtin:cyclic:2", "--ideal", "gens:5"], 1);
}

#[test]
fn bound_from_environment_and_flag() {
    golden_env(
        "hull_bound_env",
        &["hull", "tests/data/set3.json", "--ideal", "rank:3"],
        &[("HULLKIT_BOUND", "8")],
        0,
    );
    golden("hull_bound_flag", &["--bound", "8", "hull", "tests/data/set3.json", "--ideal", "rank:3"], 0);
    golden_env(
        "bad_bound_env",
        &["end", "tests/data/s3.json"],
        &[("HULLKIT_BOUND", "lots")],
        1,
    );
    golden("zero_bound", &["--bound", "0", "end", "tests/data/s3.json"], 1);
}

#[test]
fn quotient_command() {
    golden("quotient_s3_non_units", &["quotient", "tests/data/s3.json", "--ideal", "non-units"], 0);
    golden(
        "quotient_set3_rank2_json",
        &["--format", "json", "quotient", "tests/data/set3.json", "--ideal", "rank:2"],
        0,
    );
}

#[test]
fn check_command() {
    golden("check_gf2_2_zero_rep", &["check", "tests/data/gf2_2.json", "--ideal", "minimal", "--properties", "rep"], 0);
    golden("check_set3_rank2_all", &["check", "tests/data/set3.json", "--ideal", "rank:2"], 0);
    golden(
        "check_clifford_json",
        &["--format", "json", "check", "tests/data/clifford.json", "--ideal", "all", "--properties", "sep,reductive"],
        0,
    );
    golden("check_bad_property", &["check", "tests/data/set3.json", "--ideal", "all", "--properties", "nice"], 1);
}

#[test]
fn sn_command() {
    golden("sn_5", &["sn", "5"], 0);
    golden("sn_3_non_aut_json", &["--format", "json", "sn", "3", "--ideal", "non-aut"], 0);
    golden("sn_4_refused", &["sn", "4"], 1);
    golden("sn_4_partial", &["sn", "4", "--allow-n4"], 0);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s3.dot");
    let (code, _, stderr) = run(&["sn", "3", "--dot", out.to_str().unwrap()], &[]);
    assert_eq!(code, 0, "{stderr}");
    compare("sn_3_dot.dot", &std::fs::read_to_string(&out).unwrap());
}

#[test]
fn semiring_command() {
    golden(
        "semiring_m2b_unit",
        &["semiring", "tests/data/boolean.json", "--matrix", "2", "--ideal", "unit:0,0", "--idempotents", "diag"],
        0,
    );
    golden("semiring_boolean_all", &["--format", "json", "semiring", "tests/data/boolean.json", "--ideal", "all"], 0);
    golden("semiring_bad_ideal", &["semiring", "tests/data/boolean.json", "--ideal", "some"], 1);
    golden("semiring_unit_needs_matrix", &["semiring", "tests/data/boolean.json", "--ideal", "unit:0,0"], 1);
}

#[test]
fn audit_command() {
    golden("audit", &["audit"], 0);
}

#[test]
fn usage_errors() {
    golden("no_arguments", &[], 1);
    golden("unknown_command", &["frobnicate"], 1);
    golden("missing_ideal", &["hull", "tests/data/set3.json"], 1);
    let (code, stdout, _) = run(&["--help"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("semiring"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "hull", "tests/data/s3.json", "--ideal", "non-units"];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["report"]["verdicts"]["omega_realized_by_t"], true);
    assert!(Path::new(&root().join("tests/golden")).is_dir());
}
