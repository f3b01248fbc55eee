use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spidersq"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn spidersq")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn parse_prints_canonical_json() {
    let o = run(&["parse", &fixture("square.sd")]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["diagrams"]["d2"]["spiders"][0]["habitat"],
        serde_json::json!([["M", "S2", "X"], ["X"]])
    );
    assert!(!stdout(&o).contains('\r'));
}

#[test]
fn parse_json_documents_too() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("square.json");
    fs::write(&json, stdout(&run(&["parse", &fixture("square.sd")]))).unwrap();
    let again = run(&["parse", json.to_str().unwrap()]);
    assert_eq!(code(&again), 0);
    assert_eq!(
        stdout(&again),
        stdout(&run(&["parse", &fixture("square.sd")]))
    );
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sd");
    fs::write(&bad, "diagram x { labels: A; zones: {A | A}, {}; }").unwrap();
    let o = run(&["parse", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&run(&["parse", "/nonexistent.sd"])), 2);
}

#[test]
fn models_count_and_list() {
    let o = run(&[
        "models",
        &fixture("example_one.sd"),
        "--name",
        "e1",
        "--size",
        "1",
    ]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "2"));
    let o = run(&[
        "models",
        &fixture("example_one.sd"),
        "--name",
        "e1",
        "--size",
        "1",
        "--list",
    ]);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn entails_exit_codes() {
    let sq = fixture("square.sd");
    let holds = run(&[
        "entails",
        &sq,
        "--lhs",
        "complex_axis",
        "--rhs",
        "d1",
        "--bound",
        "3",
    ]);
    assert_eq!(code(&holds), 0);
    let fails = run(&["entails", &sq, "--lhs", "d1", "--rhs", "d3", "--bound", "3"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).starts_with("countermodel: U="));
    assert_eq!(
        code(&run(&["entails", &sq, "--lhs", "nope", "--rhs", "d3"])),
        2
    );
}

#[test]
fn apply_a_rule() {
    let params = r#"{"spider":{"habitat":[["M","S1","X"]]},"zone":["X"]}"#;
    let o = run(&[
        "apply",
        &fixture("square.sd"),
        "--name",
        "d1",
        "--rule",
        "AddFeet",
        "--params",
        params,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["spiders"][0]["habitat"],
        serde_json::json!([["M", "S1", "X"], ["X"]])
    );

    let o = run(&[
        "apply",
        &fixture("square.sd"),
        "--name",
        "d1",
        "--rule",
        "Combine",
        "--with",
        "m",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["spiders"].as_array().unwrap().len(), 2);

    let o = run(&[
        "apply",
        &fixture("square.sd"),
        "--name",
        "d1",
        "--rule",
        "Teleport",
    ]);
    assert_eq!(code(&o), 2);
}

fn derive_to(dir: &Path, args: &[&str]) -> (i32, PathBuf) {
    let o = run(args);
    let path = dir.join("proof.json");
    fs::write(&path, &o.stdout).unwrap();
    (code(&o), path)
}

#[test]
fn derive_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let sq = fixture("square.sd");
    let (c, proof) = derive_to(
        dir.path(),
        &[
            "--quiet",
            "derive",
            "--premises",
            &format!("{sq}:d2"),
            "--assert",
            &format!("{sq}:d3"),
            "--goal",
            &format!("{sq}:d3"),
            "--max-depth",
            "6",
        ],
    );
    assert_eq!(c, 0);
    let ok = run(&[
        "check",
        proof.to_str().unwrap(),
        "--premises",
        &format!("{sq}:d2"),
    ]);
    assert_eq!(code(&ok), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(report["valid"], true);
    assert_eq!(report["steps_checked"], 4);

    let wrong = run(&[
        "check",
        proof.to_str().unwrap(),
        "--premises",
        &format!("{sq}:d4"),
    ]);
    assert_eq!(code(&wrong), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&wrong)).unwrap();
    assert_eq!(report["valid"], false);

    let none = run(&[
        "derive",
        "--premises",
        &format!("{sq}:d1"),
        "--goal",
        &format!("{sq}:d3"),
        "--max-depth",
        "8",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&none), 1);
    assert!(stdout(&none).is_empty());
}

#[test]
fn square_writes_its_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq");
    let o = run(&[
        "square",
        "--s1",
        "life",
        "--s2",
        "death",
        "--out",
        out.to_str().unwrap(),
        "--bound",
        "3",
    ]);
    // S̄ has no sound derivation, so the command reports it and exits 1.
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("T6"));
    for f in [
        "summary.json",
        "square.dot",
        "corners/d1.json",
        "corners/d8.json",
        "meta_terms/Sbar.json",
        "proofs/T1.json",
        "proofs/T10.dot",
    ] {
        assert!(out.join(f).exists(), "{f}");
    }
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["failed"], serde_json::json!(["T6"]));
    assert_eq!(summary["derivations"].as_array().unwrap().len(), 10);
}

#[test]
fn dot_output() {
    let o = run(&["dot", &fixture("connectives.sd"), "--name", "grouped"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("digraph compound {"));
    assert_eq!(
        stdout(&o),
        stdout(&run(&[
            "dot",
            &fixture("connectives.sd"),
            "--name",
            "grouped"
        ]))
    );
    let p = run(&["dot", "--proof", &fixture("proofs/T5.json")]);
    assert_eq!(code(&p), 0);
    assert!(stdout(&p).contains("label=\"Combine\""));
}
