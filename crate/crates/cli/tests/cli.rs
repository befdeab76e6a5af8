//! End-to-end runs of the `usl` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn usl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usl")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn make(dir: &Path, args: &[&str]) -> PathBuf {
    let path = dir.join(format!("{}.usg", args.join("_").replace(['(', ')', ','], "")));
    let mut full = vec!["make"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = usl(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn make_and_info_k3() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = make(dir.path(), &["k3"]);
    let out = usl(&["info", k3.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "size 10",
        "zero 0",
        "identity none",
        "star1 regular *-semigroup",
        "r-height 2",
    ] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
}

#[test]
fn info_on_tb_reports_involutory() {
    let dir = tempfile::tempdir().unwrap();
    let tb = make(dir.path(), &["tb"]);
    let text = stdout(&usl(&["info", tb.to_str().unwrap()]));
    assert!(text.contains("star1 involutory"), "{text}");
    assert!(text.contains("identity 1"), "{text}");
}

#[test]
fn make_writes_usg_to_stdout() {
    let out = usl(&["make", "tb"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("usg "));
}

#[test]
fn field_family_info() {
    let dir = tempfile::tempdir().unwrap();
    let m = make(dir.path(), &["full", "--field", "gf(3)"]);
    let text = stdout(&usl(&["info", m.to_str().unwrap()]));
    assert!(text.contains("size 81"), "{text}");
    assert!(text.contains("index 2 period 24"), "{text}");
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = make(dir.path(), &["k3"]);
    let k3 = k3.to_str().unwrap();
    let holds = usl(&["check", k3, "x (x)' x = x"]);
    assert_eq!(holds.status.code(), Some(0));
    assert!(stdout(&holds).starts_with("holds"));
    let fails = usl(&["check", k3, "(x x')^3 (y y')^3 = (y y')^3 (x x')^3"]);
    assert_eq!(fails.status.code(), Some(1));
    assert_eq!(stdout(&fails).trim(), "fails: x=(1,1), y=(2,1): lhs=(1,2), rhs=(2,1)");
    let starved = usl(&["--budget", "10", "check", k3, "x y z = z y x"]);
    assert_eq!(starved.status.code(), Some(3));
    assert!(stdout(&starved).starts_with("inconclusive"));
    let malformed = usl(&["check", k3, "x = "]);
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn transpose_identity_holds_in_m2_gf2() {
    let dir = tempfile::tempdir().unwrap();
    let m = make(dir.path(), &["full", "--field", "gf(2)", "--unary", "transpose"]);
    let out = usl(&["check", m.to_str().unwrap(), "(x x')^3 (y y')^3 = (y y')^3 (x x')^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "holds (256 assignments)");
}

#[test]
fn isoterm_command() {
    let dir = tempfile::tempdir().unwrap();
    let tb = make(dir.path(), &["tb"]);
    let out = usl(&["isoterm", tb.to_str().unwrap(), "x y x", "--max-len", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no equal word found"));
}

#[test]
fn sapir_command() {
    let out = usl(&[
        "sapir",
        "--depth",
        "3",
        "--max-len",
        "4",
        "--square-free",
        "--check",
        "x x' y = x x'",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k 1 alphabet 64"), "{text}");
    assert!(text.contains("depth 3 length 512 square-free true"), "{text}");
    assert!(text.contains("holds on"), "{text}");
}

#[test]
fn malformed_usg_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.usg");
    std::fs::write(&bad, "garbage\n").unwrap();
    let out = usl(&["info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn unknown_names_are_rejected() {
    assert_eq!(usl(&["verify", "--claim", "C99"]).status.code(), Some(2));
    assert_eq!(usl(&["make", "nonsense"]).status.code(), Some(2));
    assert_eq!(usl(&["verify", "--tier", "medium"]).status.code(), Some(2));
}

#[test]
fn verify_selected_claims_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = usl(&[
        "verify",
        "--claim",
        "C5",
        "--claim",
        "c7",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2/2 passed"));
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(
        text.contains("\"id\": \"C5\"") && text.contains("\"verdict\": \"pass\"") && text.contains("\"ms\": 0"),
        "{text}"
    );
}
