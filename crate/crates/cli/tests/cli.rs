use std::process::{Command, Output};

fn qdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdr")).args(args).env_remove("QDR_PREC").output().expect("qdr runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_s1_passes() {
    let o = qdr(&["verify", "S1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 12);
    assert!(out.contains("S1: 12/12 passed at precision 12"));
}

#[test]
fn verify_json_schema() {
    let o = qdr(&["--format", "json", "verify", "--suite", "S1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "S1");
    assert_eq!(v["precision"], 12);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 12);
    for r in results {
        assert!(r["name"].is_string());
        assert_eq!(r["status"], "pass");
        assert!(r["ms"].is_u64());
        assert!(r.get("witness").is_none());
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = qdr(&["verify", "S9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite `S9`"));
}

#[test]
fn precision_floor_and_env() {
    assert_eq!(qdr(&["--prec", "3", "eval", "x"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_qdr")).args(["eval", "(1 + x)^-1"]).env("QDR_PREC", "4").output().unwrap();
    assert_eq!(stdout(&o).trim(), "1 - x + x^2 - x^3 + O(x^4)");
}

#[test]
fn suite_file_failure_exits_one() {
    let path = std::env::temp_dir().join(format!("qdr-suite-{}.txt", std::process::id()));
    std::fs::write(&path, "# comment\nok | xy | x*y | q*y*x | exact\nbad | xy | x*y | y*x | exact\n").unwrap();
    let o = qdr(&["--format", "json", "verify", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"][0]["status"], "pass");
    assert_eq!(v["results"][1]["status"], "fail");
    assert_eq!(v["results"][1]["witness"], "(-1 + q)*y");
}

#[test]
fn apply_phi_and_psi() {
    let o = qdr(&["apply", "phi", "x"]);
    assert_eq!(stdout(&o).trim(), "(y^-1 - q^-1*y)*x^-1");
    let o = qdr(&["--prec", "6", "apply", "psi", "(1+y)^-1*x"]);
    assert_eq!(stdout(&o).trim(), "(1 + y)^-1*x + O(x^7)");
}

#[test]
fn apply_rho_to_u() {
    let got = qdr(&["--prec", "8", "apply", "rho", "u"]);
    let want = qdr(&["--prec", "8", "eval", "-u^-1"]);
    assert_eq!(got.status.code(), Some(0));
    assert_eq!(stdout(&got), stdout(&want));
}

#[test]
fn parse_errors_report_position() {
    let o = qdr(&["eval", "x + * y"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("at 4"), "{}", stderr(&o));
}

#[test]
fn z_coefficients() {
    let o = qdr(&["--prec", "6", "z-coeffs", "psi", "-n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("z_0 = 1"));
    assert!(out.contains("z_1 = (-q*(-1 + q)^-1)*(1 + y)^-1"), "{out}");

    let o = qdr(&["--prec", "6", "--format", "json", "z-coeffs", "identity", "-n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "0", "0"]));

    let o = qdr(&["--prec", "6", "--format", "json", "z-coeffs", "tau", "-n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["s"], -1);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "0"]));
}

#[test]
fn z_coefficients_reject_non_standard_form() {
    let o = qdr(&["z-coeffs", "sigma"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn express_r20() {
    let o = qdr(&["--format", "json", "express", "R20"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["combination"], "(-qh^-1 - qh)*theta2 + theta1*theta1");
    assert_eq!(qdr(&["express", "x", "--max-len", "2"]).status.code(), Some(1));
}
