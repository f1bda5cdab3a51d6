use std::process::{Command, Output};

use serde_json::Value;

fn hypergap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypergap"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_field(o: &Output, key: &str) -> f64 {
    let v: Value = serde_json::from_str(&stdout(o)).unwrap();
    v[key].as_f64().unwrap()
}

#[test]
fn eig_n3_closed_form() {
    let o = hypergap(&["eig", "--n", "3", "--r", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!((json_field(&o, "lambda1") - 3.4674011003).abs() < 1e-9);
}

#[test]
fn eig_text_lists_every_bound() {
    let o = hypergap(&["eig", "--n", "3", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("3.467401100"));
    for name in [
        "lambda1_lower_csch",
        "lambda1_lower_uniform",
        "lambda1_upper_n2",
        "lambda1_upper_sine",
        "lambda1_exact_n3",
        "lambda2_lower_csch",
        "lambda2_upper_sine",
        "gap_lower_csch",
        "gap_upper_cubic",
    ] {
        assert!(s.contains(name), "missing {name}");
    }
}

#[test]
fn eig_with_curvature() {
    let o = hypergap(&[
        "eig", "--n", "3", "--k", "2", "--r", "1", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let want = 4.0 + std::f64::consts::PI.powi(2);
    assert!((json_field(&o, "lambda1") - want).abs() < 1e-7);
}

#[test]
fn eig_rejects_zero_radius() {
    let o = hypergap(&["eig", "--n", "2", "--r", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("radius must be positive"));
    let o = hypergap(&["eig", "--n", "2", "--r", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_arguments_exit_2() {
    assert_eq!(
        hypergap(&["eig", "--n", "two", "--r", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(hypergap(&["eig", "--r", "1"]).status.code(), Some(2));
    assert_eq!(
        hypergap(&["eig", "--n", "1", "--r", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn horoconvex_certificate_json() {
    let o = hypergap(&["horoconvex", "--n", "2", "--D", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bound = v["certified_bound"].as_f64().unwrap();
    assert!((bound - 4.08516).abs() < 1e-4);
    assert!(v["reference_numeric_gap"].as_f64().unwrap() <= bound);
    assert!(v["ball_radius_floor"].is_number());
    assert!(v["assumptions"].is_array());

    let o = hypergap(&["horoconvex", "--n", "2", "--D", "20", "--format", "json"]);
    let doubled: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ratio = bound / doubled["certified_bound"].as_f64().unwrap();
    assert!((ratio - 8.0).abs() < 1e-12);
}

#[test]
fn horoconvex_rejects_small_diameter() {
    let o = hypergap(&["horoconvex", "--n", "2", "--D", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("4 ln 2"));
}

#[test]
fn sweep_writes_stable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = hypergap(&[
            "sweep",
            "--n",
            "2",
            "--r-min",
            "5",
            "--r-max",
            "40",
            "--points",
            "8",
            "--scale",
            "log",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(!text.contains('\r'));

    let mut rows = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (r3, gap, lower) = (col("r3_gap"), col("gap"), col("gap_lower"));
    let mut count = 0;
    for rec in rows.records() {
        let rec = rec.unwrap();
        assert_eq!(rec.len(), header.len());
        let f = |i: usize| rec[i].parse::<f64>().unwrap();
        assert!(f(r3) <= 63.8307);
        assert!(f(gap) >= f(lower));
        count += 1;
    }
    assert_eq!(count, 8);
}

#[test]
fn sweep_n3_bound_coincides_with_lambda1() {
    let o = hypergap(&[
        "sweep", "--n", "3", "--r-min", "1", "--r-max", "10", "--points", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rows = csv::Reader::from_reader(o.stdout.as_slice());
    let header = rows.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (l1, ub) = (col("lambda1"), col("lambda1_upper_sine"));
    for rec in rows.records() {
        let rec = rec.unwrap();
        let (a, b): (f64, f64) = (rec[l1].parse().unwrap(), rec[ub].parse().unwrap());
        assert!((a - b).abs() <= 1e-9 * b);
    }
}

#[test]
fn sweep_errors() {
    let o = hypergap(&["sweep", "--n", "2", "--r-min", "5", "--r-max", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hypergap(&[
        "sweep", "--n", "2", "--r-min", "1", "--r-max", "2", "--points", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = hypergap(&[
        "sweep",
        "--n",
        "2",
        "--r-min",
        "1",
        "--r-max",
        "2",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_minimal_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = hypergap(&[
        "verify",
        "--grid-n",
        "3",
        "--grid-r",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let checks = report.as_array().unwrap();
    let exact = checks
        .iter()
        .find(|c| c["check_name"] == "n3_exactness")
        .unwrap();
    assert_eq!(exact["passed"], true);
    let m = exact["margin"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&m));
    for c in checks {
        for key in ["check_name", "passed", "worst_case", "margin"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn verify_default_grid_passes() {
    let o = hypergap(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in report.as_array().unwrap() {
        assert!(c["margin"].as_f64().unwrap() > 0.0, "{c}");
    }
}

#[test]
fn negative_tolerance_exits_2() {
    let o = hypergap(&[
        "verify",
        "--grid-n",
        "3",
        "--grid-r",
        "2",
        "--ode-tol",
        "-1e-12",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hypergap"))
        .args(["eig", "--n", "2", "--r", "1"])
        .env_clear()
        .env("HYPERGAP_LAMBDA_REL_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hypergap"))
        .args(["eig", "--n", "3", "--r", "2", "--format", "json"])
        .env_clear()
        .env("HYPERGAP_TOL", "1e-9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!((json_field(&o, "lambda1") - 3.4674011003).abs() < 1e-7);
}

#[test]
fn failed_check_exits_1() {
    // a start offset this large leaves the smallest balls degenerate
    let o = hypergap(&[
        "verify",
        "--grid-n",
        "2",
        "--grid-r",
        "0.5",
        "--t0-factor",
        "1e-3",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL"));
}
