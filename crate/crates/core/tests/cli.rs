use std::path::{Path, PathBuf};

use ncgb::cli::{run, EXIT_BOUND, EXIT_INFINITE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

const S2: &str = "\
label: S2
alphabet: a b c
# the symmetric 2x2 matrices
relations:
a^2 - a
ba + ab
b^2 - b
ca + ac - c
cb + bc - c
c^2 - b - a
";

fn ncgb(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["ncgb"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn groebner_prints_the_basis() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s2.pres", S2);
    let (code, out, _) = ncgb(&["groebner", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("status: complete"));
    assert!(out.contains("basis (8):"));
    assert!(out.contains("  cb - ac\n"));
}

#[test]
fn normal_forms() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s2.pres", S2);
    let f = f.to_str().unwrap();
    let (code, out, _) = ncgb(&["nf", f, "--poly", "c^2*b"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "b\n"));
    let (code, out, _) = ncgb(&["nf", f, "--poly", "c^2*b", "--raw"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "-ab + b\n"));
    let (_, out, _) = ncgb(&["nf", f, "--poly", "c^2*b", "--raw", "--trace"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("step ")).count(), 5);
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s2.pres", S2);
    let runs: Vec<Value> = (0..2)
        .map(|_| {
            let (code, out, _) = ncgb(&["groebner", f.to_str().unwrap(), "--snapshots", "--json", "-"]);
            assert_eq!(code, EXIT_OK);
            strip_timing(serde_json::from_str(&out).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0]["schema"], 1);
    assert_eq!(runs[0]["completion"]["status"]["kind"], "complete");
    assert_eq!(runs[0]["completion"]["basis"].as_array().unwrap().len(), 8);
}

#[test]
fn json_to_file_keeps_text_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, out, _) = ncgb(&["envelope", "--preset", "m2-units", "--json", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("quotient: finite, dimension 9"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["quotient"]["dimension"], 9);
}

#[test]
fn dims_from_a_preset_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let (code, out, _) =
        ncgb(&["dims", "--preset", "a(1,2)", "--op", "alternating-sum", "--to", "5", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1,4,16,60,225,840\n");
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().next(), Some("degree,dim"));
    assert_eq!(text.lines().last(), Some("5,840"));
}

#[test]
fn structure_constant_files() {
    let dir = tempfile::tempdir().unwrap();
    // sl2 with e=x1, f=x2, h=x3
    let sc = write(
        dir.path(),
        "sl2.sc",
        "dim 3\narity 2\n1 2 -> x3\n2 1 -> -x3\n3 1 -> 2*x1\n1 3 -> -2*x1\n3 2 -> -2*x2\n2 3 -> 2*x2\n",
    );
    let (code, out, err) = ncgb(&["dims", "--sc", sc.to_str().unwrap(), "--op", "lie-bracket", "--to", "4"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, "1,3,6,10,15\n");
    let (code, _, err) = ncgb(&["dims", "--sc", sc.to_str().unwrap(), "--to", "4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--op"));
}

#[test]
fn multiplication_table() {
    let (code, out, _) = ncgb(&["multable", "--preset", "m2-units"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("dimension 9\n"));
    assert!(out.contains("2+5-8"));
    let (code, out, _) = ncgb(&["multable", "--preset", "sl2"]);
    assert_eq!(code, EXIT_INFINITE);
    assert!(out.contains("infinite"));
}

#[test]
fn bounded_completion_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "aba.pres", "alphabet: a b\nrelations:\naba - ba\n");
    let f = f.to_str().unwrap();
    let (code, out, _) = ncgb(&["groebner", f, "--max-degree", "10"]);
    assert_eq!(code, EXIT_BOUND);
    assert!(out.contains("truncated at degree 10"));
    let (code, out, _) = ncgb(&["dims", f, "--to", "4", "--max-degree", "10"]);
    assert_eq!(code, EXIT_BOUND);
    assert!(out.starts_with("warning:"));
    let (code, _, _) = ncgb(&["multable", f, "--max-iter", "2"]);
    assert_eq!(code, EXIT_BOUND);
}

#[test]
fn usage_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ncgb(&[]).0, EXIT_USAGE);
    assert_eq!(ncgb(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(ncgb(&["--help"]).0, EXIT_OK);
    assert_eq!(ncgb(&["--version"]).0, EXIT_OK);
    assert_eq!(ncgb(&["groebner", "/nonexistent/file"]).0, EXIT_USAGE);
    let bad = write(dir.path(), "bad.pres", "alphabet: a b\nrelations:\nb a\n");
    let (code, _, err) = ncgb(&["groebner", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("parse error"));
    let f = write(dir.path(), "s2.pres", S2);
    let (code, _, _) = ncgb(&["nf", f.to_str().unwrap(), "--poly", "d"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, err) = ncgb(&["envelope", "--preset", "a(1,2)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--op"));
    assert_eq!(ncgb(&["envelope", "--preset", "nope"]).0, EXIT_USAGE);
}

#[test]
fn operation_expressions() {
    let (code, out, _) = ncgb(&["dims", "--preset", "a(1,2)", "--op", "abc - cba", "--to", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1,4,8,12,18\n");
}
