use std::process::{Command, Output};

use serde_json::Value;

fn octaboson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octaboson"))
        .args(args)
        .env_remove("OCTABOSON_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const X2: &str = r#"{"nvars":1,"terms":[{"exp":[2],"num":"1","den":"1"},{"exp":[0],"num":"-1","den":"1"}]}"#;
const X_MINUS_1: &str = r#"{"nvars":1,"terms":[{"exp":[1],"num":"1","den":"1"},{"exp":[0],"num":"-1","den":"1"}]}"#;
const X_PLUS_2: &str = r#"{"nvars":1,"terms":[{"exp":[1],"num":"1","den":"1"},{"exp":[0],"num":"2","den":"1"}]}"#;

#[test]
fn poly_single_particle() {
    let out = octaboson(&["poly", "--n", "1", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lambda"], serde_json::json!([1]));
    // (e3 - e1)/(1 - e4) at t = (1/3, -1/4, 1/5, -1/6)
    assert_eq!(v["expansion"][1]["mu"], serde_json::json!([0]));
    assert_eq!(v["expansion"][1]["coeff"], "-44/359");
    assert_eq!(v["principalSpecialization"]["equal"], true);
}

#[test]
fn poly_zero_partition() {
    let out = octaboson(&["poly", "--n", "2", "--lambda", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["expansion"],
        serde_json::json!([{"mu": [0, 0], "coeff": "1"}])
    );
}

#[test]
fn poly_compare_macdonald() {
    let out = octaboson(&["poly", "--profile", "two", "--compare-macdonald", "--n", "2", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["equal"], true);
}

#[test]
fn poly_csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("octaboson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.csv");
    let out = octaboson(&["poly", "--lambda", "1,0", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mu,coeff"));
    assert_eq!(lines.next(), Some("1 0,1"));
    assert_eq!(text.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn poly_guard_violation_exits_1_with_error_json() {
    let out = octaboson(&["poly", "--lambda", "1", "--t1", "1/2", "--t2", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "genericity");
}

#[test]
fn float_parameters_are_rejected() {
    let out = octaboson(&["poly", "--lambda", "1", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "parse");
}

#[test]
fn lambda_and_n_must_agree() {
    let out = octaboson(&["poly", "--n", "3", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "domain");
}

#[test]
fn profile_zero_pattern_is_enforced() {
    let out = octaboson(&["poly", "--profile", "two", "--lambda", "1", "--t3", "1/5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "domain");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(octaboson(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(octaboson(&["--help"]).status.code(), Some(0));
}

#[test]
fn divide_exact_quotient() {
    let out = octaboson(&["divide", "--num", X2, "--den", X_MINUS_1]);
    assert_eq!(out.status.code(), Some(0));
    let q = &json(&out)["quotient"];
    assert_eq!(q["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn divide_remainder_exits_2() {
    let out = octaboson(&["divide", "--num", X2, "--den", X_PLUS_2]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "not-divisible");
}

#[test]
fn budget_exceeded_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_octaboson"))
        .args(["verify", "orthogonality", "--n", "2"])
        .env("OCTABOSON_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "budget");
}

#[test]
fn verify_pieri_passes_exactly() {
    let out = octaboson(&["verify", "pieri", "--n", "2", "--maxPart", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"][0]["maxResidual"], "0");
    assert_eq!(v["reports"][0]["cases"], 10);
}

#[test]
fn verify_algebra_flags_untwisted_counterexample() {
    let out = octaboson(&["verify", "algebra", "--relation", "com-d", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports[0]["relation"], "com-d1");
    assert_eq!(reports[1]["relation"], "com-d2");
    let ul = &reports[2]["expectedFailures"][0];
    assert_eq!(ul["observed"], true);
    assert!(ul["witness"].is_array());
}

#[test]
fn verify_algebra_all_relations() {
    let out = octaboson(&["verify", "algebra", "--n", "2", "--maxPart", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("relation,n,maxPart,mode,maxResidual,pass,cases"));
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().skip(1).all(|l| l.contains(",exact,0,true,")));
}

#[test]
fn verify_orthogonality_passes() {
    let out = octaboson(&["verify", "orthogonality", "--n", "2", "--M", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["maxOffDiagonal"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["M"], 64);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 55);
}

#[test]
fn coarse_quadrature_fails_with_exit_1() {
    let out = octaboson(&["verify", "orthogonality", "--n", "2", "--M", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn verify_remaining_suites_pass() {
    for args in [
        vec!["verify", "norms", "--n", "1", "--maxPart", "4"],
        vec!["verify", "adjoint", "--n", "1", "--maxPart", "3"],
        vec!["verify", "eigen", "--n", "2", "--maxPart", "3", "--seed", "5"],
        vec!["verify", "degeneration", "--n", "2", "--maxPart", "3"],
        vec!["verify", "scattering", "--n", "3", "--seed", "9"],
        vec!["verify", "pieri", "--profile", "three", "--n", "1", "--maxPart", "4"],
    ] {
        let out = octaboson(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn degeneration_rejects_two_parameter_start() {
    let out = octaboson(&["verify", "degeneration", "--profile", "two"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "domain");
}

#[test]
fn reports_are_byte_reproducible() {
    let args = ["verify", "eigen", "--n", "2", "--maxPart", "3", "--seed", "42"];
    let a = octaboson(&args);
    let b = octaboson(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = octaboson(&["verify", "eigen", "--n", "2", "--maxPart", "3", "--seed", "43"]);
    assert_ne!(a.stdout, other.stdout);
}
