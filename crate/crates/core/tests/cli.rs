use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn vshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vshift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const A: &str = r#"[{"u":"0","v":"1"},{"u":"1","v":"0"}]"#;
const B: &str = r#"[{"u":"0","v":"10"},{"u":"10","v":"11"},{"u":"11","v":"0"}]"#;

#[test]
fn eval_prints_bits_and_image() {
    let dir = TempDir::new().unwrap();
    for (elem, expected) in [(A, "1000"), (B, "1000")] {
        let f = write(&dir, "elem.json", elem);
        let out = vshift(&["eval", "--elem", &f, "--point", "(0)", "--bits", "4"]);
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["bits"], expected);
        assert_eq!(v["image"], serde_json::json!({"pre": "1", "per": "0"}));
    }
}

#[test]
fn eval_rejects_incomplete_code() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "bad.json",
        r#"[{"u":"0","v":"1"},{"u":"10","v":"0"}]"#,
    );
    let out = vshift(&["eval", "--elem", &f, "--point", "(0)", "--bits", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not complete"));
}

#[test]
fn steer_writes_certificate() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "in.json",
        r#"{"sites":[[],["d1"]],"values":[{"pre":"","per":"0"},{"pre":"","per":"0"}],"targets":["0","1"]}"#,
    );
    let out_path = dir.path().join("out.json");
    let out = vshift(&["steer", "--in", &input, "--out", out_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json_file(&out_path);
    assert_eq!(
        v["certificate"]["memberships"],
        serde_json::json!([true, true])
    );
    assert_eq!(v["certificate"]["all_hold"], true);
    assert!(v["moves"].as_array().unwrap().len() <= 3);
}

#[test]
fn steer_empty_and_invalid_windows() {
    let dir = TempDir::new().unwrap();
    let empty = write(
        &dir,
        "empty.json",
        r#"{"sites":[],"values":[],"targets":[]}"#,
    );
    let out_path = dir.path().join("out.json");
    let out = vshift(&["steer", "--in", &empty, "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_file(&out_path);
    assert_eq!(v["moves"], serde_json::json!([]));
    assert_eq!(v["certificate"]["all_hold"], true);

    let dup = write(
        &dir,
        "dup.json",
        r#"{"sites":[["d1"],["d1"]],"values":[{"pre":"","per":"0"},{"pre":"","per":"1"}],"targets":["0","1"]}"#,
    );
    let out = vshift(&["steer", "--in", &dup, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn steer_budget_exhaustion_has_its_own_exit_code() {
    let dir = TempDir::new().unwrap();
    // both generators act by the same element, so the two sites move together
    let input = format!(
        r#"{{"sites":[["d1"],["d2"]],"values":[{{"pre":"","per":"0"}},{{"pre":"","per":"0"}}],"targets":["0","1"],"dhom":{{"d1":{A},"d2":{A}}}}}"#
    );
    let input = write(&dir, "in.json", &input);
    let out_path = dir.path().join("out.json");
    let out = vshift(&[
        "steer",
        "--in",
        &input,
        "--out",
        out_path.to_str().unwrap(),
        "--budget",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn verify_and_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let report = report.to_str().unwrap();
    let out = vshift(&["verify", "--trials", "2", "--seed", "5", "--out", report]);
    assert!(out.status.success());
    let out = vshift(&["report", "--in", report]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("ALL SUITES PASSED\n"));

    let mut v = json_file(Path::new(report));
    v["suites"][2]["failures"] = 1.into();
    v["suites"][2]["status"] = "fail".into();
    v["passed"] = false.into();
    let failing = write(&dir, "failing.json", &v.to_string());
    let out = vshift(&["report", "--in", &failing]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("transducer") && text.contains("seed 5"));

    v["suites"] = serde_json::json!([]);
    let empty = write(&dir, "empty.json", &v.to_string());
    let out = vshift(&["report", "--in", &empty]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("NO SUITES RUN"));

    let out = vshift(&["verify", "--max-word-len", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let malformed = write(&dir, "malformed.json", "{");
    assert_eq!(
        vshift(&["report", "--in", &malformed]).status.code(),
        Some(2)
    );
}
