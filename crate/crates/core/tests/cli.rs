mod common;

use std::process::Command;

use common::*;

fn coforest(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coforest")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn prove_reports_peirce_unprovable() {
    let (code, out, _) = coforest(&["prove", PEIRCE]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), "unprovable");
    let (code, out, _) = coforest(&["prove", DN_PEIRCE]);
    assert_eq!((code, out.trim()), (0, "provable"));
}

#[test]
fn count_church_numerals() {
    // λf.λx.f⁵⟨x⟩ has size 8 under the documented metric.
    let (code, out, _) = coforest(&["count", CHURCH, "--max-size", "8"]);
    assert_eq!((code, out.trim()), (0, "6"));
    let (_, oracle, _) = coforest(&["count", CHURCH, "--max-size", "8", "--oracle"]);
    assert_eq!(oracle.trim(), "6");
}

#[test]
fn enumerate_lists_one_proof_per_line() {
    let (code, out, _) = coforest(&["enumerate", CHURCH, "--max-size", "20", "--limit", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        ["\\z0:p->p. \\z1:p. z1", "\\z0:p->p. \\z1:p. z0<z1>", "\\z0:p->p. \\z1:p. z0<z0<z1>>"]
    );
}

#[test]
fn verify_dn_peirce_passes() {
    let (code, out, _) = coforest(&["verify", DN_PEIRCE, "--depth", "6"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().last(), Some("PASS"));
    let (code, out, _) = coforest(&["verify", DN_PEIRCE, "--depth", "4", "--oracle", "--max-size", "10"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("oracle agreement up to size 10: ok"), "{out}");
}

#[test]
fn verify_horn_checks_both_constructions() {
    let (code, out, _) = coforest(&["verify", &format!("{HORN_CTX} |- q"), "--depth", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("horn depth 5: ok"), "{out}");
}

#[test]
fn expand_writes_dot_and_compact_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("peirce.dot");
    let (code, out, _) = coforest(&["expand", PEIRCE, "--depth", "8", "--compact", "--dot", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "\\z0:(p->q)->p. z0<\\z1:p. O>");
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"), "{dot}");
}

#[test]
fn json_output_is_versioned() {
    for args in [
        vec!["solve", CHURCH, "--format", "json"],
        vec!["prove", CHURCH, "--format", "json"],
        vec!["count", CHURCH, "--max-size", "5", "--format", "json"],
        vec!["expand", CHURCH, "--depth", "3", "--format", "json"],
    ] {
        let (_, out, _) = coforest(&args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1, "{args:?}");
    }
}

#[test]
fn check_cross_checks_the_type_checker() {
    let (code, out, _) = coforest(&["check", CHURCH, "--term", "\\f:p->p. \\x:p. f<f<x>>"]);
    assert_eq!((code, out.trim()), (0, "member"));
    let (code, out, _) = coforest(&["check", CHURCH, "--term", "\\f:p->p. \\x:p. f"]);
    assert_eq!((code, out.trim()), (1, "not a member"));
}

#[test]
fn bad_input_exits_2() {
    let (code, _, err) = coforest(&["prove", "|- (p->q"]);
    assert_eq!(code, 2);
    assert!(err.contains("syntax error"), "{err}");
    assert_eq!(coforest(&["check", CHURCH, "--term", "\\f. f"]).0, 2);
    assert_eq!(coforest(&["prove", "x:p, x:q |- p"]).0, 2);
    assert_eq!(coforest(&["count", CHURCH]).0, 2);
}

#[test]
fn oracle_cap_exits_4() {
    let (code, _, err) = coforest(&["count", "f:p->p->p, x:p |- p", "--max-size", "40", "--oracle"]);
    assert_eq!(code, 4, "{err}");
}
