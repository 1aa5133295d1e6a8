use std::process::{Command, Output};

fn logint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logint")).args(args).output().expect("spawn logint")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_closed_form_values() {
    let out = logint(&["eval", "--m", "0", "--k", "0", "--a", "1"]);
    assert!(out.status.success());
    // π²/4
    assert!(stdout(&out).starts_with("2.46740110027233"));

    let out = logint(&["eval", "--m", "1", "--k", "0", "--a", "1"]);
    assert_eq!(stdout(&out).trim(), "1.233700550136170");

    let out = logint(&["eval", "--m", "0", "--k", "1", "--a", "2"]);
    assert_eq!(stdout(&out).trim(), "0.459478659629318");
}

#[test]
fn eval_exact_and_check() {
    let out = logint(&["eval", "--a", "2", "--exact", "--check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert_eq!(lines[1], "(1/2)*pi^2*(a+1)^-1 + (1/2)*ln(a)^2*(a+1)^-1");
    assert!(lines[2].starts_with("quadrature 1.72500956916792") && lines[2].ends_with("pass"), "{}", lines[2]);
}

#[test]
fn quad_reports_value_and_cost() {
    let out = logint(&["quad", "--m", "0", "--k", "0", "--a", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text.lines().next().unwrap().parse().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-13);
    assert!(text.contains("evaluations"));
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(logint(&["eval", "--a=-1"]).status.code(), Some(2));
    assert_eq!(logint(&["eval", "--a", "0"]).status.code(), Some(2));
    assert_eq!(logint(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(logint(&["verify", "--tol", "1e-20"]).status.code(), Some(2));
    assert_eq!(logint(&["table", "--family", "F9"]).status.code(), Some(2));
    assert_eq!(logint(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_failures_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("logint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_logint"))
        .args(["verify", "--suite", "core", "--m", "1", "--k", "1", "--a", "2", "--out"])
        .arg(&report)
        .env("LOGINT_SEED_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reads_grid_file() {
    let dir = std::env::temp_dir().join(format!("logint-grid-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let grid = dir.join("grid.toml");
    std::fs::write(&grid, "suite = \"lemmas\"\ntolerance = 1e-6\nlemma_samples = 5\nderivative_k_max = 3\n").unwrap();
    let out = logint(&["verify", "--grid", grid.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["suite"], "lemmas");
    assert_eq!(v["summary"]["total"], 8);
    assert_eq!(v["summary"]["tolerance"], 1e-6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_formats() {
    let out = logint(&["table", "--family", "F0"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("family,m,k,r,a,integrand,expression,value"));
    assert_eq!(lines.count(), 8);

    let out = logint(&["table", "--family", "general", "--m", "0..1", "--k", "0,2", "--a", "3", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert!(row["rel_err"].as_f64().unwrap() < 1e-12, "{row}");
    }

    let out = logint(&["table", "--family", "fib", "--k", "0", "--format", "md"]);
    let md = stdout(&out);
    assert!(md.starts_with("| family |"));
    assert!(md.contains("(1/2)*pi^2 + 2*ln(alpha)^2"), "{md}");
}
