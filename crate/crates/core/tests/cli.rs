use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-roots")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn info_reports_invariants() {
    let out = run(&["info", "--lattice", &fixture("u.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["even"], Value::Bool(true));
    assert_eq!(v["discriminant_exponent"], serde_json::json!(1));
    assert_eq!(v["signature"], serde_json::json!([1, 1]));
}

#[test]
fn vinberg_is_deterministic() {
    let args = ["vinberg", "--lattice", &fixture("ex134.json"), "--controller", "1,1,1", "--norms", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["roots"], serde_json::json!([[0, 0, 1], [0, 1, 0], [1, 0, 0]]));
    assert_eq!(v["config"]["controller"], serde_json::json!([1, 1, 1]));
}

#[test]
fn controller_on_mirror_is_a_domain_error() {
    let out = run(&["vinberg", "--lattice", &fixture("ex134.json"), "--controller", "1,1,1", "--norms", "2,8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["vinberg", "--controller", "1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["info", "--lattice", "/nonexistent/lattice.json"]).status.code(), Some(2));
    assert_eq!(
        run(&["vinberg", "--lattice", &fixture("ex134.json"), "--controller", "1,x,1", "--norms", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--threads", "0", "info", "--lattice", &fixture("u.json")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn qseries_prints_coefficients() {
    let out = run(&["qseries", "--eta-power", "-24", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), serde_json::json!([1, 24, 324, 3200]));
    let out = run(&["qseries", "--cusp-identity", "tau2m", "--coeffs", "24,24,24", "--n", "3"]);
    assert_eq!(stdout_json(&out), serde_json::json!([24, -252, 1472]));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("lorentz-roots-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weyl.json");
    let out = run(&[
        "--output",
        path.to_str().unwrap(),
        "weyl",
        "--lattice",
        &fixture("ex134.json"),
        "--roots",
        "1,0,0;0,1,0;0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rho"], serde_json::json!(["1/2", "1/2", "1/2"]));
    assert_eq!(v["rho_norm"], serde_json::json!("-3/2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn denominator_and_cartan() {
    let roots = "1,0,0;0,1,0;0,0,1";
    let out = run(&["cartan", "--lattice", &fixture("ex134.json"), "--roots", roots]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["a"], serde_json::json!([[2, -2, -2], [-2, 2, -2], [-2, -2, 2]]));
    let out = run(&["denominator", "--lattice", &fixture("ex134.json"), "--roots", roots, "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["residual_zero"], Value::Bool(true));
    assert_eq!(v["anti_invariant"], Value::Bool(true));
}
