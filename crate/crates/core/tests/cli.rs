//! End-to-end runs of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

use fermion_ckw::invariants::k_matrix;
use fermion_ckw::io::{format_fermion, read_fermion};
use fermion_ckw::random::{normalized_fermi_state, stream_rng};
use fermion_ckw::sampling::{canonical_ghz, canonical_w};
use fermion_ckw::tensor::FermiState336;
use serde_json::Value;
use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermion-ckw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_state(dir: &Path, name: &str, p: &FermiState336) -> String {
    let path = dir.join(name);
    std::fs::write(&path, format_fermion(p)).unwrap();
    path.to_str().unwrap().to_owned()
}

fn invariants(path: &str) -> Value {
    let out = run(&["invariants", "--state", path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn ghz_report() {
    let dir = tempdir().unwrap();
    let p = canonical_ghz() * std::f64::consts::FRAC_1_SQRT_2;
    let v = invariants(&write_state(dir.path(), "ghz.json", &p));
    assert!((num(&v["D"][0]) - 0.25).abs() < 1e-14);
    assert!(num(&v["D"][1]).abs() < 1e-14);
    assert!(num(&v["con"]).abs() < 1e-12);
    assert_eq!(v["class"], "GHZ");
    assert_eq!(v["rankK"], 6);
    for s in v["spectrum"].as_array().unwrap() {
        assert!((num(s) - 0.5).abs() < 1e-12);
    }
}

#[test]
fn slater_report() {
    let dir = tempdir().unwrap();
    let v = invariants(&write_state(
        dir.path(),
        "sep.json",
        &FermiState336::slater(0, 1, 2).unwrap(),
    ));
    assert_eq!(v["class"], "Separable");
    assert!((num(&v["entropy"]) - 3f64.ln()).abs() < 1e-14);
}

#[test]
fn w_report() {
    let dir = tempdir().unwrap();
    let p = canonical_w().normalized().unwrap();
    let v = invariants(&write_state(dir.path(), "w.json", &p));
    assert!(num(&v["D"][0]).abs() < 1e-14 && num(&v["D"][1]).abs() < 1e-14);
    assert!((num(&v["con"]) - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["class"], "W");
}

#[test]
fn malformed_state_exits_two() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"fermion_336": [[3, 2, 1, 1.0, 0.0]]}"#).unwrap();
    let out = run(&["invariants", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["invariants"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--suite", "bogus", "--n", "1", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ambiguous_rank_exits_three() {
    let dir = tempdir().unwrap();
    let p = normalized_fermi_state(&mut stream_rng(5, 0));
    let sv = k_matrix(&p).singular_values();
    // cut between the second and third singular values: numeric rank 2
    let tol = ((sv[1] + sv[2]) / 2.0 / sv[0]).to_string();
    let path = write_state(dir.path(), "g.json", &p);
    let out = run(&["invariants", "--state", &path, "--tol", &tol]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["singular_values"].as_array().unwrap().len(), 6);
}

#[test]
fn sample_is_byte_deterministic() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sample",
            "--class",
            "ghz_random",
            "--n",
            "200",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.lines().next().unwrap(), "tr_kk_dagger,entropy,con,d_abs,class");
    assert_eq!(text.lines().count(), 201);
}

#[test]
fn unwritable_output_fails() {
    let out = run(&[
        "sample",
        "--class",
        "zero_con",
        "--n",
        "3",
        "--seed",
        "1",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curves_respect_domains() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let p = path.to_str().unwrap();
    let ok = run(&[
        "curves",
        "--kind",
        "w_special",
        "--min",
        "1",
        "--max",
        "1.5",
        "--step",
        "0.1",
        "--out",
        p,
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let last = text.lines().last().unwrap();
    let entropy: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!((entropy - 6f64.ln()).abs() < 1e-14);
    let bad = run(&[
        "curves",
        "--kind",
        "biseparable",
        "--min",
        "-0.5",
        "--max",
        "1",
        "--step",
        "0.1",
        "--out",
        p,
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("[0, 1]"));
}

#[test]
fn verify_small_run_passes() {
    let out = run(&["verify", "--suite", "all", "--n", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn embed_writes_fermion_file() {
    let dir = tempdir().unwrap();
    let src = dir.path().join("q.json");
    let dst = dir.path().join("p.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(&src, format!(r#"{{"qubits_3": [[0,0,0,{h},0.0],[1,1,1,{h},0.0]]}}"#)).unwrap();
    let out = run(&[
        "embed",
        "--qubits",
        src.to_str().unwrap(),
        "--out",
        dst.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let p = read_fermion(&dst).unwrap();
    assert_eq!(p, canonical_ghz() * h);
    std::fs::write(&src, r#"{"qubits_3": [[0,0,0,1.0,0.0]]}"#).unwrap();
    run(&[
        "embed",
        "--qubits",
        src.to_str().unwrap(),
        "--out",
        dst.to_str().unwrap(),
    ]);
    assert_eq!(read_fermion(&dst).unwrap(), FermiState336::slater(0, 1, 2).unwrap());
    std::fs::write(&src, "{").unwrap();
    let bad = run(&[
        "embed",
        "--qubits",
        src.to_str().unwrap(),
        "--out",
        dst.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
