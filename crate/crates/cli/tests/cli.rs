//! End-to-end checks of the binary: exit codes, output stability, DOT files.

use std::path::Path;
use std::process::Command;

fn hh1() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hh1"))
}

fn write_spec(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn analyze_ut33_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "ut33.json",
        r#"{"type":"catalog","name":"heisenberg","params":{"p":3}}"#,
    );
    let out = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict:              SOLVABLE (theorem)"));

    let out = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["verdict"], "SOLVABLE");
    assert_eq!(parsed["gamma"]["edge_count"], 8);

    // byte-identical across runs
    let again = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "3", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn emit_dot_ut33_has_nine_nodes_and_eight_edges() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "ut33.json",
        r#"{"type":"catalog","name":"heisenberg","params":{"p":3}}"#,
    );
    let dots = dir.path().join("dots");
    let out = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "3", "--emit-dot"])
        .arg(&dots)
        .output()
        .unwrap();
    assert!(out.status.success());
    let gamma = std::fs::read_to_string(dots.join("gamma.dot")).unwrap();
    assert_eq!(gamma.matches(" -> ").count(), 8);
    let nodes = gamma
        .lines()
        .filter(|l| l.ends_with("\";") && !l.contains("->"))
        .count();
    assert_eq!(nodes, 9);
}

#[test]
fn emit_dot_writes_the_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "c2c2.json",
        r#"{"type":"product","factors":[
            {"type":"catalog","name":"cyclic","params":{"n":2}},
            {"type":"catalog","name":"cyclic","params":{"n":2}}]}"#,
    );
    let dots = dir.path().join("dots");
    let out = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "2", "--emit-dot"])
        .arg(&dots)
        .output()
        .unwrap();
    assert!(out.status.success());
    let gamma2 = std::fs::read_to_string(dots.join("gamma2.dot")).unwrap();
    assert_eq!(gamma2.matches(" -> ").count(), 6);
    assert!(dots.join("gamma.dot").exists());
    assert!(dots.join("gamma_reduced.dot").exists());
}

#[test]
fn unknown_catalog_is_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "bad.json",
        r#"{"type":"catalog","name":"nope"}"#,
    );
    let out = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn closure_cap_is_exit_code_3() {
    let dir = tempfile::tempdir().unwrap();
    // two generators of a symmetric group far above the closure cap
    let spec = write_spec(
        dir.path(),
        "big.json",
        r#"{"type":"permutation","degree":8,
            "generators":[[1,2,3,4,5,6,7,0],[1,0,2,3,4,5,6,7]]}"#,
    );
    let out = hh1()
        .args(["analyze", "--input"])
        .arg(&spec)
        .args(["--prime", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_file_is_exit_code_2() {
    let out = hh1()
        .args(["analyze", "--input", "/nonexistent/x.json", "--prime", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
