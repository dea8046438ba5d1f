//! End-to-end exercises of the binary: algebra files, set files, JSON
//! reports, and exit codes.

use std::io::Write;
use std::process::{Command, Output};

fn symq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symq")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn normal_form_of_a_symmetrized_square() {
    let out = symq(&["symmetrize", "--preset", "canonical:1", "-e", "p^2x^2", "--normal-form"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/2"), "missing constant term in: {text}");
    assert!(text.contains("x*x*p*p"), "missing leading word in: {text}");
}

#[test]
fn correspond_reports_the_cubic_discrepancy_with_json() {
    let out = symq(&[
        "correspond", "--json", "--preset", "canonical:1", "--h", "p^3", "--f", "x^3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "correspond");
    assert_eq!(report["results"][0]["equal"], false);
    assert_eq!(report["results"][0]["discrepancy"], "-3/2");
}

#[test]
fn algebra_and_set_files_drive_quantize_check() {
    let dir = tempfile::tempdir().unwrap();
    let alg_path = dir.path().join("osc.json");
    let mut alg = std::fs::File::create(&alg_path).unwrap();
    write!(
        alg,
        r#"{{
            "name": "osc",
            "case": "constant",
            "generators": ["x1", "x2", "p1", "p2"],
            "brackets": [
                {{"i": "p1", "j": "x1", "terms": [{{"coeff": "1"}}]}},
                {{"i": "p2", "j": "x2", "terms": [{{"coeff": "1"}}]}}
            ]
        }}"#
    )
    .unwrap();
    let set_path = dir.path().join("set.json");
    let mut set = std::fs::File::create(&set_path).unwrap();
    write!(
        set,
        r#"{{
            "algebra": "osc.json",
            "centrals": ["1/2*(p1^2 + p2^2 + x1^2 + x2^2)", "x1p2 - x2p1"]
        }}"#
    )
    .unwrap();
    let out = symq(&["quantize-check", "--json", "--set", set_path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let verdict = report["verdict"].as_str().unwrap();
    assert!(verdict.contains("quasi-integrable"), "verdict: {verdict}");
}

#[test]
fn validate_flags_a_jacobi_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut f = std::fs::File::create(&path).unwrap();
    // {L1,L2}=L3, {L2,L3}=L1, {L3,L1}=L1 breaks the Jacobi identity.
    write!(
        f,
        r#"{{
            "name": "bad",
            "case": "linear",
            "generators": ["L1", "L2", "L3"],
            "brackets": [
                {{"i": "L1", "j": "L2", "terms": [{{"target": "L3", "coeff": "1"}}]}},
                {{"i": "L2", "j": "L3", "terms": [{{"target": "L1", "coeff": "1"}}]}},
                {{"i": "L3", "j": "L1", "terms": [{{"target": "L1", "coeff": "1"}}]}}
            ]
        }}"#
    )
    .unwrap();
    let out = symq(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("jacobi violation"));
}

#[test]
fn bad_input_exits_with_code_two() {
    let out = symq(&["symmetrize", "--preset", "canonical:1", "-e", "q^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown name"));

    let out = symq(&["symmetrize", "--preset", "nope", "-e", "x"]);
    assert_eq!(out.status.code(), Some(2));

    let out = symq(&["verify", "pc2", "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = symq(&["casimir", "--json", "--preset", "so3", "-e", "L1^2+L2^2+L3^2", "--seed", "42"]);
    let b = symq(&["casimir", "--json", "--preset", "so3", "-e", "L1^2+L2^2+L3^2", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
