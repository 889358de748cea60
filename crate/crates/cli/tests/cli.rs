use std::process::{Command, Output};

fn qsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsum"))
        .args(args)
        .env_remove("QSUM_TOL")
        .env_remove("QSUM_SEED")
        .env_remove("QSUM_COUNT")
        .env_remove("QSUM_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("structured output parses")
}

#[test]
fn list_shows_every_row() {
    let o = qsum(&["--format", "structured", "list"]);
    assert!(o.status.success());
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 31);
    assert_eq!(rows[0]["tag"], "R1");
    assert_eq!(rows[30]["id"], "beta_integral_classical");
}

#[test]
fn list_one_row() {
    let o = qsum(&["list", "--id", "R26"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("third_extension") && s.contains("|b| < |y| < |a|"), "{s}");
}

#[test]
fn eval_known_values() {
    let o = qsum(&["--format", "structured", "eval", "gamma", "z=0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["value"][0].as_f64().unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-13);

    let o = qsum(&["--format", "structured", "eval", "qpoch_infinite", "a=0.5", "q=0.5"]);
    let v = json(&o);
    assert!((v["value"][0].as_f64().unwrap() - 0.2887880950866024).abs() < 1e-14);
    assert_eq!(v["converged"], true);
}

#[test]
fn verify_exit_codes() {
    let ok = qsum(&["verify", "ramanujan_1psi1", "q=0.5", "a=2", "b=0.3", "z=0.6"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PASS"));

    let off_ring = qsum(&["verify", "ramanujan_1psi1", "q=0.5", "a=2", "b=0.3", "z=1.6"]);
    assert_eq!(off_ring.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&off_ring.stderr).contains("|b/a| < |z| < 1"));

    // Demanding more than double precision can give is a failure, not an error.
    let strict = qsum(&["--tol", "1e-30", "verify", "ramanujan_1psi1", "q=0.5", "a=2", "b=0.3", "z=0.6"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).starts_with("FAIL"));
}

#[test]
fn unknown_names_are_errors() {
    assert_eq!(qsum(&["verify", "R99"]).status.code(), Some(2));
    assert_eq!(qsum(&["eval", "zeta", "s=2"]).status.code(), Some(2));
    assert_eq!(qsum(&["trend", "nowhere"]).status.code(), Some(2));
    assert_eq!(qsum(&["verify", "landen", "q=0.3", "x=0.1", "y=1"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r3.json");
    let o = qsum(&["--count", "5", "--seed", "9", "--out", path.to_str().unwrap(), "sweep", "R3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("first_extension") && stdout(&o).contains("5/5"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["run"]["seed"], 9);
    assert_eq!(v["reports"][0]["summary"]["pass"], 5);
}

#[test]
fn sweep_is_repeatable_across_workers() {
    let a = qsum(&["--format", "structured", "--count", "6", "sweep", "theta_relation_N"]);
    let b = qsum(&["--format", "structured", "--count", "6", "--workers", "3", "sweep", "theta_relation_N"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pinned_parameters_apply_to_every_point() {
    let o = qsum(&["--format", "structured", "--count", "4", "sweep", "first_extension", "N=3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for r in v["reports"][0]["results"].as_array().unwrap() {
        assert_eq!(r["point"]["N"][0], 3.0);
    }
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qsum.toml");
    std::fs::write(&path, "count = 3\nseed = 4\ntol = 1e-8\n").unwrap();
    let cfg = path.to_str().unwrap();
    let v = json(&qsum(&["--config", cfg, "--format", "structured", "sweep", "q_binomial"]));
    assert_eq!(v["run"]["count"], 3);
    assert_eq!(v["run"]["seed"], 4);
    assert_eq!(v["reports"][0]["tol"], 1e-8);
    // Flags beat the file.
    let v = json(&qsum(&["--config", cfg, "--count", "2", "--format", "structured", "sweep", "q_binomial"]));
    assert_eq!(v["run"]["count"], 2);

    std::fs::write(&path, "colour = \"red\"\n").unwrap();
    assert_eq!(qsum(&["--config", cfg, "list"]).status.code(), Some(2));
}

#[test]
fn environment_overrides_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qsum.toml");
    std::fs::write(&path, "count = 3\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qsum"))
        .args(["--config", path.to_str().unwrap(), "--format", "structured", "sweep", "q_binomial"])
        .env("QSUM_COUNT", "2")
        .output()
        .unwrap();
    assert_eq!(json(&o)["run"]["count"], 2);
}

#[test]
fn trend_reports_each_step() {
    let o = qsum(&["--format", "structured", "trend", "alpha_psi_to_qbeta", "--path", "1,2,8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let t = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(t["steps"].as_array().unwrap().len(), 3);
    assert_eq!(t["pass"], true);
}
