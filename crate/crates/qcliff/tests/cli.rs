use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qcliff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcliff")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const GENERIC_A: &str = "[[0, 0.7, -0.3, 0.5], [-0.7, 0, 0.2, -0.4], [0.3, -0.2, 0, 0.6], [-0.5, 0.4, -0.6, 0]]";

#[test]
fn classify_single_flagpole_free_spinor() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [[1,0],[0,0],[1,0],[0,0]]}"#);
    let out = qcliff(&["classify", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["class"], 6);
    assert!(v[0]["fierz_residuals"].as_array().unwrap().iter().all(|r| r.as_f64().unwrap() < 1e-12));
}

#[test]
fn zero_spinor_is_unclassifiable() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [[0,0],[0,0],[0,0],[0,0]]}"#);
    let out = qcliff(&["classify", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)[0]["class"], "unclassifiable");
}

#[test]
fn batch_keeps_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "s.json",
        r#"{"spinors": [
            {"components": [[1,0],[0,0],[1,0],[0,0]]},
            {"components": [[1,0],[0,0],[0,0],[0,0]]},
            {"components": [[1,0],[2,0],[1,0],[-2,0]]}
        ]}"#,
    );
    for backend in ["float", "exact"] {
        let out = qcliff(&["classify", "--input", input.to_str().unwrap(), "--backend", backend]);
        assert_eq!(out.status.code(), Some(0));
        let classes: Vec<_> = json(&out).as_array().unwrap().iter().map(|r| r["class"].clone()).collect();
        assert_eq!(classes, vec![Value::from(6), Value::from(2), Value::from(4)]);
    }
}

#[test]
fn zero_form_keeps_every_class() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "s.json",
        r#"[{"components": [[1,0],[0,0],[0.5,0.5],[0,0]]},
            {"components": [[1,0],[0,0],[0,0],[0,0]]},
            {"components": [[1,0],[0,0],[0,1],[0,0]]},
            {"components": [[1,0],[2,0],[1,0],[-2,0]]},
            {"components": [[1,0],[1,0],[1,0],[-1,0]]},
            {"components": [[1,0],[0,0],[1,0],[0,0]]}]"#,
    );
    let out = qcliff(&["bclassify", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for (i, r) in json(&out)["records"].as_array().unwrap().iter().enumerate() {
        assert_eq!(r["class"], format!("{}", i + 1));
        assert_eq!(r["b_class"], format!("{}_B", i + 1));
        assert_eq!(r["duality"]["admissible"], true);
    }
}

#[test]
fn weyl_spinor_under_generic_form() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [[1,0],[0,0],[1,0],[0,0]]}"#);
    let a = write(dir.path(), "a.json", GENERIC_A);
    let out = qcliff(&["bclassify", "--input", input.to_str().unwrap(), "--a-matrix", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["records"][0];
    assert_eq!(r["class"], "6");
    assert_eq!(r["b_class"], "1_B");
    assert_eq!(r["duality"]["admissible"], true);
}

#[test]
fn exact_and_float_backends_agree() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [["1/2","0"],["0","1/3"],["1","0"],["0","-1"]]}"#);
    let a = write(dir.path(), "a.json", r#"[["0","1/2","0","0"],["-1/2","0","0","0"],["0","0","0","1/4"],["0","0","-1/4","0"]]"#);
    let run = |backend| json(&qcliff(&["bclassify", "--input", input.to_str().unwrap(), "--a-matrix", a.to_str().unwrap(), "--backend", backend]));
    let (f, e) = (run("float"), run("exact"));
    assert_eq!(f["records"][0]["b_class"], e["records"][0]["b_class"]);
    let sf = f["records"][0]["b_covariants"]["sigma"][0].as_f64().unwrap();
    let se = e["records"][0]["b_covariants"]["sigma"][0].as_f64().unwrap();
    assert!((sf - se).abs() <= 1e-9 * se.abs().max(1.0));
}

#[test]
fn symmetric_a_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [[1,0],[0,0],[1,0],[0,0]]}"#);
    let a = write(dir.path(), "a.json", "[[0,1,0,0],[1,0,0,0],[0,0,0,0],[0,0,0,0]]");
    let out = qcliff(&["bclassify", "--input", input.to_str().unwrap(), "--a-matrix", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn b_matrix_needs_minkowski_symmetric_part() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [[1,0],[0,0],[1,0],[0,0]]}"#);
    let good = write(dir.path(), "b.json", "[[1,0,0,0.5],[0,-1,0,0],[0,0,-1,0],[-0.5,0,0,-1]]");
    let bad = write(dir.path(), "b2.json", "[[2,0.5,0,0],[-0.5,-1,0,0],[0,0,-1,0],[0,0,0,-1]]");
    let input = input.to_str().unwrap();
    assert_eq!(qcliff(&["bclassify", "--input", input, "--b-matrix", good.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(qcliff(&["bclassify", "--input", input, "--b-matrix", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(qcliff(&["classify", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
    let short = write(dir.path(), "s.json", r#"{"components": [[1,0]]}"#);
    assert_eq!(qcliff(&["classify", "--input", short.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qcliff(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(qcliff(&["classify", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn verify_algebra_laws_passes() {
    let out = qcliff(&["verify", "algebra-laws", "--seed", "3", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)[0]["passed"], true);
}

#[test]
fn appendix_diff_writes_its_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("appendix.json");
    let out = qcliff(&["verify", "appendix-diff", "--samples", "5", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let lines = v[0]["extra"]["lines"].as_array().unwrap();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["verdict"].is_string()));
}

#[test]
fn duality_table_is_diagonal_without_a_and_deterministic() {
    let run = |args: &[&str]| String::from_utf8(qcliff(args).stdout).unwrap();
    let flat = run(&["duality-table", "--a-random", "0", "--samples", "70", "--seed", "2"]);
    let rows: Vec<Vec<u64>> =
        flat.lines().skip(1).map(|l| l.split(',').skip(1).map(|n| n.parse().unwrap()).collect()).collect();
    for (b, row) in rows.iter().enumerate() {
        for (c, &n) in row.iter().enumerate() {
            if b != c {
                assert_eq!(n, 0, "{flat}");
            }
        }
    }
    let args = ["duality-table", "--a-random", "1", "--samples", "35", "--seed", "9"];
    assert_eq!(run(&args), run(&args));
    let json_args = ["duality-table", "--samples", "14", "--format", "json"];
    let v: Value = serde_json::from_str(&run(&json_args)).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "s.json", r#"{"components": [[1,0],[0,0],[0,0],[0,0]]}"#);
    let cfg = write(dir.path(), "run.json", r#"{"input": ["s.json"], "format": "csv"}"#);
    let out = qcliff(&["classify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,class"));
    assert!(text.lines().nth(1).unwrap().starts_with("0,2,"));
}

/// For this spinor, a form with only `A_{01}` leaves `σ_B = ω_B = 0` exactly,
/// so the class is kept and the pair is reported as outside the table.
#[test]
fn special_form_keeps_the_dipole_class() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "s.json", r#"{"components": [[1,0],[0,0],[1,0],[0,0]]}"#);
    let a = write(dir.path(), "a.json", r#"[["0","1/2","0","0"],["-1/2","0","0","0"],["0","0","0","0"],["0","0","0","0"]]"#);
    let out = qcliff(&["bclassify", "--input", input.to_str().unwrap(), "--a-matrix", a.to_str().unwrap(), "--backend", "exact"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json(&out)["records"][0];
    assert_eq!(r["b_class"], "6_B");
    assert_eq!(r["duality"]["admissible"], false);
    assert_eq!(r["duality"]["marginal"], false);
}
