use std::path::PathBuf;
use std::process::{Command, Output};

fn kpower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpower")).args(args).output().expect("kpower runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const TIMES_TWO: &str = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n2\n";
const CONE_OF_ID: &str = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n1\n";

#[test]
fn homology_of_multiplication_by_two() {
    let file = fixture("times_two.txt", TIMES_TWO);
    let o = kpower(&["homology", &file]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("H0 = Z/2"), "{out}");
    assert!(out.contains("H1 = 0"), "{out}");
}

#[test]
fn square_moves_the_torsion_up() {
    let file = fixture("times_two_sq.txt", TIMES_TWO);
    let o = kpower(&["lambda", "--k", "2", &file]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("ranks [0, 1, 1]"), "{out}");
    assert!(out.contains("H1 = Z/2"), "{out}");
    assert!(out.contains("H0 = 0") && out.contains("H2 = 0"), "{out}");
}

#[test]
fn cone_of_identity_has_zero_euler_characteristic() {
    let file = fixture("cone.txt", CONE_OF_ID);
    let o = kpower(&["euler", &file]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("chi = 0"));
    let o = kpower(&["--format", "json-lines", "euler", &file]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["chi"], 0);
    assert_eq!(v["kind"], "euler");
}

#[test]
fn k1_class_of_a_unit_complex() {
    let file = fixture("unit.txt", "ring Q\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n2\ndtilde 1\n1\n");
    let o = kpower(&["k1class", &file]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("class 2"), "{}", stdout(&o));
    let o = kpower(&["k1class", "--k", "2", &file]);
    assert!(stdout(&o).contains("class 1/2"), "{}", stdout(&o));
}

#[test]
fn compose_prints_p22() {
    let o = kpower(&["compose", "--k", "2", "--l", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("P_{2,2} = e1*e3 - e4"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn invalid_requests_exit_with_two() {
    let o = kpower(&["compose", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("error Dimension:"));
    let o = kpower(&["compose", "--k", "5", "--l", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("error InfeasibleSize:"));
    let o = kpower(&["verify-all", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_in_json_lines() {
    let o = kpower(&["--format", "json-lines", "homology", "/definitely/not/here"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["kind"], "error");
    assert_eq!(v["error"], "Io");

    let bad = fixture("bad.txt", "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n2 3\n");
    let o = kpower(&["--format", "json-lines", "homology", &bad]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "Parse");
}

#[test]
fn single_suites_pass() {
    for suite in ["lambda", "equivariant", "k1"] {
        let o = kpower(&["verify-all", "--suite", suite]);
        assert!(o.status.success(), "{suite}");
        assert!(stdout(&o).contains("overall: PASS"));
    }
    let o = kpower(&["equivariant", "--group", "C3"]);
    assert!(o.status.success());
}

#[test]
fn json_lines_records_parse() {
    let o = kpower(&["--format", "json-lines", "verify-all", "--suite", "lambda"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["kind"].is_string());
    }
}
