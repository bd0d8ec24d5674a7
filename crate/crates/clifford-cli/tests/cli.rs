//! End-to-end tests of the binary: document round trips, exit codes,
//! determinism across parallelism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clifford"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) {
    std::fs::write(dir.join(name), content).unwrap();
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const CUBIC: &str = r#"{"field":{"kind":"rationals"},"degree":3,"coeffs":["1","0","0","1"]}"#;

#[test]
fn construct_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf7", "--out", "rep.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let v = run(&["verify", "--rep", "rep.json"], dir.path());
    assert_eq!(v.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(doc["ok"], serde_json::json!(true));
    assert_eq!(doc["r"], serde_json::json!(1));

    // serialize → parse → serialize is the identity on the payload
    let text1 = std::fs::read_to_string(dir.path().join("rep.json")).unwrap();
    let reconstruct = run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf7", "--out", "rep2.json"],
        dir.path(),
    );
    assert!(reconstruct.status.success());
    let text2 = std::fs::read_to_string(dir.path().join("rep2.json")).unwrap();
    assert_eq!(text1, text2);
}

#[test]
fn tampered_document_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf7", "--out", "rep.json"],
        dir.path(),
    );
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("rep.json")).unwrap())
            .unwrap();
    doc["pencil"]["A"][0][0] = serde_json::json!("3");
    write(dir.path(), "bad.json", &doc.to_string());

    let v = run(&["verify", "--rep", "bad.json"], dir.path());
    assert_eq!(v.status.code(), Some(1));
    let vdoc: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(vdoc["ok"], serde_json::json!(false));
    assert_eq!(vdoc["failing_coefficients"][0], serde_json::json!(0));

    // analyze refuses to load the violation, naming the coefficient
    let a = run(&["analyze", "--rep", "bad.json"], dir.path());
    assert_eq!(a.status.code(), Some(1));
    assert!(stderr(&a).contains("Clifford identity violated at coefficient 0"));
}

#[test]
fn schema_errors_name_the_missing_field() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf7", "--out", "rep.json"],
        dir.path(),
    );
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("rep.json")).unwrap())
            .unwrap();
    doc.as_object_mut().unwrap().remove("r");
    write(dir.path(), "norank.json", &doc.to_string());
    let v = run(&["verify", "--rep", "norank.json"], dir.path());
    assert_eq!(v.status.code(), Some(64));
    assert!(stderr(&v).contains("missing field `r`"), "{}", stderr(&v));
}

#[test]
fn analyze_reports_invariants() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf7", "--out", "rep.json"],
        dir.path(),
    );
    let a = run(&["analyze", "--rep", "rep.json"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["invariants"]["rank"], serde_json::json!(1));
    assert_eq!(doc["invariants"]["degree"], serde_json::json!(3));
    assert_eq!(doc["invariants"]["euler_char"], serde_json::json!(3));
    assert_eq!(doc["invariants"]["slope"], serde_json::json!("3"));
    assert_eq!(doc["charpoly_ok"], serde_json::json!(true));
    assert_eq!(doc["verdict"], serde_json::json!("stable"));
    assert_eq!(doc["fiber_profile"].as_array().unwrap().len(), 9);
}

#[test]
fn equiv_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf7", "--out", "rep.json"],
        dir.path(),
    );
    run(
        &[
            "construct", "--kind", "random-equivalent", "--rep", "rep.json", "--seed", "7",
            "--out", "conj.json",
        ],
        dir.path(),
    );
    let e = run(&["equiv", "--a", "rep.json", "--b", "conj.json"], dir.path());
    assert_eq!(e.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&e)).unwrap();
    assert_eq!(doc["verdict"], serde_json::json!("equivalent"));
    assert_eq!(doc["intertwiner_dim"], serde_json::json!(1));

    // different forms is a usage error
    run(
        &["construct", "--kind", "clock-shift", "--d", "2", "--field", "q", "--out", "pauli.json"],
        dir.path(),
    );
    let e = run(&["equiv", "--a", "rep.json", "--b", "pauli.json"], dir.path());
    assert_eq!(e.status.code(), Some(64));
}

#[test]
fn tangent_document() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &[
            "construct", "--kind", "clock-shift", "--d", "3", "--field", "zeta3", "--out",
            "rep.json",
        ],
        dir.path(),
    );
    let t = run(&["tangent", "--rep", "rep.json"], dir.path());
    assert_eq!(t.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&t)).unwrap();
    assert_eq!(doc["tangent_dim"], serde_json::json!(9));
    assert_eq!(doc["moduli_dim"], serde_json::json!(1));
    assert_eq!(doc["matches"], serde_json::json!(true));
}

#[test]
fn census_document_and_table() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cubic.json", CUBIC);
    let c = run(&["census", "--form", "cubic.json", "--field", "gf2", "--m", "3"], dir.path());
    assert_eq!(c.status.code(), Some(0), "{}", stderr(&c));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&c)).unwrap();
    assert_eq!(doc["total_solutions"], serde_json::json!(336));
    assert_eq!(doc["irreducible_class_count"], serde_json::json!(2));
    assert_eq!(doc["predicted_irreducible_classes"], serde_json::json!(2));
    assert_eq!(doc["prediction"], serde_json::json!("match"));
    assert_eq!(doc["wall_time_ms"], serde_json::Value::Null);
    // every number shown in the table is in the JSON
    let table = stderr(&c);
    assert!(table.contains("total solutions      336"));
    assert!(table.contains("irreducible classes  2"));

    // divisibility: m = 2 yields nothing, exits 0 (no prediction)
    let c2 = run(&["census", "--form", "cubic.json", "--field", "gf2", "--m", "2"], dir.path());
    assert_eq!(c2.status.code(), Some(0));
    let doc2: serde_json::Value = serde_json::from_str(&stdout(&c2)).unwrap();
    assert_eq!(doc2["total_solutions"], serde_json::json!(0));

    // guard: GF(7) m = 4 exceeds 2^30 without --force-large
    let cg = run(&["census", "--form", "cubic.json", "--field", "gf7", "--m", "4"], dir.path());
    assert_eq!(cg.status.code(), Some(64));
}

#[test]
fn census_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cubic.json", CUBIC);
    let one = run(&["census", "--form", "cubic.json", "--field", "gf2", "--m", "3", "--jobs", "1"], dir.path());
    let four = run(&["census", "--form", "cubic.json", "--field", "gf2", "--m", "3", "--jobs", "4"], dir.path());
    assert_eq!(stdout(&one), stdout(&four));
    assert!(!stdout(&one).is_empty());
}

#[test]
fn solve_document_and_failure_path() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cubic.json", CUBIC);
    let s = run(&["solve", "--form", "cubic.json", "--m", "3", "--seed", "0"], dir.path());
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&s)).unwrap();
    assert_eq!(doc["success"], serde_json::json!(true));
    assert!(doc["solution"]["residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(doc["solution"]["diagnostics"]["fiber_rank_ok"], serde_json::json!(true));

    // zero restarts exhaust the budget immediately
    let f = run(
        &["solve", "--form", "cubic.json", "--m", "3", "--restarts", "0"],
        dir.path(),
    );
    assert_eq!(f.status.code(), Some(1));

    // degenerate form is refused up front
    write(
        dir.path(),
        "deg.json",
        r#"{"field":{"kind":"rationals"},"degree":4,"coeffs":["1","4","6","4","1"]}"#,
    );
    let d = run(&["solve", "--form", "deg.json", "--m", "4"], dir.path());
    assert_eq!(d.status.code(), Some(64));
}

#[test]
fn solve_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cubic.json", CUBIC);
    let one = run(&["solve", "--form", "cubic.json", "--m", "3", "--jobs", "1"], dir.path());
    let four = run(&["solve", "--form", "cubic.json", "--m", "3", "--jobs", "4"], dir.path());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = run(&["frobnicate"], dir.path());
    assert_eq!(bogus.status.code(), Some(64));
    let badfield = run(
        &["construct", "--kind", "clock-shift", "--d", "3", "--field", "gf6"],
        dir.path(),
    );
    assert_eq!(badfield.status.code(), Some(64));
    let missing = run(&["verify", "--rep", "nope.json"], dir.path());
    assert_eq!(missing.status.code(), Some(64));
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let h = run(&["--help"], dir.path());
    assert_eq!(h.status.code(), Some(0));
    assert!(stdout(&h).contains("census"));
}
