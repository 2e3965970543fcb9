//! End-to-end tests of the command-line binary: exit codes, stable
//! output prefixes, determinism, and stdin piping.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prehomog"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_family_b_text() {
    let out = run(&["analyze", "catalog:family_B"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("delta: x1"));
    assert!(text.contains("verdict: not transitive"));
    assert!(text.contains("open orbits: 2 (half-planes)"));
}

#[test]
fn analyze_gh_from_stdin() {
    let entry = stdout(&run(&["catalog", "gh_example"]));
    let out = run_stdin(&["analyze", "-"], &entry);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: transitive"));
    assert!(text.contains("relative class vanishes: false"));
    assert!(text.contains("H^n: 1"));
}

#[test]
fn analyze_json_is_deterministic() {
    let a = run(&["analyze", "catalog:family_E", "--format", "json"]);
    let b = run(&["analyze", "catalog:family_E", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"delta\": \"-x1^2 - x2^2\""));
}

#[test]
fn construct_coadjoint_signature_line() {
    let out = run(&["construct", "coadjoint", "catalog:h3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dimension: 6"));
    assert!(text.contains("signature: (3,3)"));
}

#[test]
fn coadjoint_then_affinize_pipeline() {
    let metric = stdout(&run(&[
        "construct", "coadjoint", "catalog:h3", "--format", "json",
    ]));
    let out = run_stdin(&["construct", "affinize", "-"], &metric);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ambient dimension: 6"));
    assert!(text.contains("delta: 1"));
}

#[test]
fn cohomology_subcommand() {
    let out = run(&[
        "cohomology",
        "catalog:gh_example",
        "--h",
        "4",
        "--degree",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H^3: 1"));
    assert!(text.contains("top character vanishes on normalizer: true"));
}

#[test]
fn tube_emits_realization_document() {
    let doc = stdout(&run(&["construct", "tube", "catalog:family_B", "--format", "json"]));
    let out = run_stdin(&["analyze", "-"], &doc);
    assert!(out.status.success());
    assert!(stdout(&out).contains("prehomogeneous: true"));
}

#[test]
fn catalog_lists_and_emits() {
    let list = stdout(&run(&["catalog"]));
    for name in ["family_B", "gh_example", "t_h3_0", "h3"] {
        assert!(list.contains(name));
    }
    let entry = run(&["catalog", "gh_example"]);
    assert!(entry.status.success());
    let text = stdout(&entry);
    assert!(text.contains("\"schema\": 1"));
    assert!(text.contains("\"kind\": \"affine_realization\""));
}

#[test]
fn catalog_all_analyses() {
    let out = run(&["catalog", "--all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("verdict:").count(), 10);
}

#[test]
fn seed_env_override_is_accepted() {
    let out = bin()
        .args(["analyze", "catalog:family_Q2"])
        .env("PHG_SEED", "5")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("delta: x1*x2"));
}

#[test]
fn validation_errors_exit_one() {
    let out = run(&["analyze", "catalog:no_such_entry"]);
    assert_eq!(out.status.code(), Some(1));

    let bad = r#"{"schema": 1, "name": "x", "kind": "affine_realization",
                  "ambient_dim": 1, "basis": [[["1/0", "0"], ["0", "0"]]]}"#;
    let out = run_stdin(&["analyze", "-"], bad);
    assert_eq!(out.status.code(), Some(1));

    let out = run_stdin(&["analyze", "-"], "not json");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn abstract_entry_rejected_by_analyze() {
    let out = run(&["analyze", "catalog:h3"]);
    assert_eq!(out.status.code(), Some(1));
}
