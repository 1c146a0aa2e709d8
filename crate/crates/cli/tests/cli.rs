use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = "# triangle\nn 3\ne 0 1 0.5\ne 0 2 0.5\ne 1 2 0.5\n";
const PATH: &str = "n 3\ne 0 1 0.9\ne 1 2 0.8\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("probconn").chain(args.iter().copied());
    let code = probconn_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_file(command: &str, file: &Path, extra: &[&str]) -> (i32, Value) {
    let path = file.to_str().unwrap();
    let mut args = vec![command, "--input", path];
    args.extend_from_slice(extra);
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(err.is_empty());
    (code, serde_json::from_str(&out).unwrap())
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| v.to_string().parse().unwrap())
}

#[test]
fn compute_triangle() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "tri.pg", TRIANGLE);
    let (_, doc) = run_file("compute", &file, &[]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["engine"], "exact");
    assert_eq!((doc["n"].as_u64(), doc["m"].as_u64()), (Some(3), Some(3)));
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        assert!((num(&doc["q"][i][j]) - 0.625).abs() < 1e-12);
    }
    assert!((num(&doc["lambda_max"]) - 2.25).abs() < 1e-12);
    assert!((num(&doc["lambda_max_normalized"]) - 0.75).abs() < 1e-12);
    assert_eq!(doc["psd"], true);
    assert_eq!(doc["definite"], true);
    assert!((num(&doc["bounds"]["lower"][0][1]) - 0.390625).abs() < 1e-12);
    assert!((num(&doc["bounds"]["upper"][0][1]) - 0.6953125).abs() < 1e-12);
    assert_eq!(doc["bounds"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(
        doc["components"][0]["vertices"],
        serde_json::json!([0, 1, 2])
    );
}

#[test]
fn seventeen_digit_floats_on_the_wire() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "path.pg", PATH);
    let (_, out, _) = run(&["bounds", "--input", file.to_str().unwrap()]);
    assert!(out.contains("9.0000000000000002e-1"), "{out}");
}

#[test]
fn mc_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("n 12\n");
    for i in 0..12 {
        text.push_str(&format!("e {} {} 0.{}\n", i, (i + 1) % 12, 3 + i % 6));
        if i % 3 == 0 {
            text.push_str(&format!("e {} {} 0.45\n", i, (i + 5) % 12));
        }
    }
    let file = write(&dir, "big.pg", &text);
    let args = [
        "mc",
        "--input",
        file.to_str().unwrap(),
        "--samples",
        "1000000",
        "--seed",
        "7",
    ];
    let (code_a, a, _) = run(&args);
    let (code_b, b, _) = run(&args);
    assert_eq!((code_a, code_b), (0, 0));
    assert_eq!(a, b);
    let doc: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["engine"], "mc");
    assert_eq!(doc["mc"]["samples"], 1_000_000);
    assert_eq!(doc["mc"]["seed"], 7);
    assert_eq!(num(&doc["mc"]["std_err"][0][0]), 0.0);
}

#[test]
fn walk_two_steps() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "path.pg", PATH);
    let (_, doc) = run_file("walk", &file, &["--z", "2"]);
    assert_eq!(doc["walk"]["z"], 2);
    assert!((num(&doc["walk"]["matrix"][0][2]) - 0.72).abs() < 1e-15);
    assert_eq!(num(&doc["walk"]["matrix"][0][1]), 0.0);
    assert!(doc.get("q").is_none());
}

#[test]
fn critical_and_spectrum_and_rank() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "path.pg", PATH);
    let (_, doc) = run_file("critical", &file, &[]);
    assert_eq!(doc["critical_vertices"][0]["k"], 1);
    assert_eq!(
        doc["critical_vertices"][0]["witnesses"],
        serde_json::json!([[0, 2]])
    );
    assert_eq!(doc["critical_vertices"].as_array().unwrap().len(), 1);

    let (_, doc) = run_file("spectrum", &file, &["--pretty"]);
    assert_eq!(doc["eigenvalues"].as_array().unwrap().len(), 3);
    assert!(doc.get("bounds").is_none());

    let (_, doc) = run_file("rank", &file, &["--include-absent"]);
    let ranking = doc["ranking"].as_array().unwrap();
    assert_eq!(ranking.len(), 3);
    let absent = ranking.iter().find(|r| r["edge"].is_null()).unwrap();
    assert_eq!(
        (absent["i"].as_u64(), absent["j"].as_u64()),
        (Some(0), Some(2))
    );
}

#[test]
fn usage_errors_exit_two() {
    let (code, out, err) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage"));

    let dir = TempDir::new().unwrap();
    let file = write(&dir, "tri.pg", TRIANGLE);
    let path = file.to_str().unwrap();
    assert_eq!(run(&["compute", "--input", path, "--bogus"]).0, 2);
    assert_eq!(run(&["compute"]).0, 2);
    assert_eq!(run(&["walk", "--input", path, "--z", "0"]).0, 2);
    assert_eq!(run(&["mc", "--input", path, "--samples", "0"]).0, 2);
    assert_eq!(run(&["bounds", "--input", path, "--tolerance", "-1"]).0, 2);
    assert_eq!(run(&["compute", "--input", "/nonexistent/graph.pg"]).0, 2);
}

#[test]
fn input_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.pg", "e 0 1 0.5\n");
    let (code, out, err) = run(&["compute", "--input", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn edge_limit_exits_three() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "tri.pg", TRIANGLE);
    let (code, out, err) = run(&[
        "compute",
        "--input",
        file.to_str().unwrap(),
        "--max-edges",
        "2",
    ]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("mc"), "{err}");
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("compute"));
}

#[test]
fn binary_exit_codes_and_streams() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "tri.pg", TRIANGLE);
    let bin = env!("CARGO_BIN_EXE_probconn");

    let ok = Command::new(bin)
        .args(["compute", "--input"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert!((num(&doc["lambda_max"]) - 2.25).abs() < 1e-12);

    let limited = Command::new(bin)
        .args(["spectrum", "--max-edges", "1", "--input"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(3));
    assert!(limited.stdout.is_empty());

    let unknown = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
}
