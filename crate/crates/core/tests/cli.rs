use std::process::{Command, Output};

use serde_json::Value;

fn treembed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treembed"))
        .args(args)
        .env_remove("TREEMBED_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = treembed(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn count_reports_known_values() {
    let v = json(&["count", "--family", "plane-binary", "--pattern", "(()())", "--n", "5"]);
    assert_eq!((v["all"].as_str(), v["good"].as_str()), (Some("10"), Some("8")));
    let v = json(&["count", "--family", "nonplane-binary", "--pattern", "(()())", "--n", "5"]);
    assert_eq!((v["all"].as_str(), v["good"].as_str()), (Some("4"), Some("3")));
}

#[test]
fn series_pointing_example() {
    let v = json(&["series", "--family", "planted-plane", "--pattern", "()", "--N", "4"]);
    let all: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["all"].as_str().unwrap()).collect();
    assert_eq!(all, ["1", "2", "6", "20"]);
    assert_eq!(v["engine"], "series");
}

#[test]
fn count_and_series_agree() {
    for (fam, pattern) in [("plane-binary", "((())())"), ("nonplane-binary", "(()(()))"), ("planted-plane", "(()()())")] {
        let s = json(&["series", "--family", fam, "--pattern", pattern, "--N", "9"]);
        for n in [5usize, 7, 9] {
            let c = json(&["count", "--family", fam, "--pattern", pattern, "--n", &n.to_string()]);
            let row = &s["rows"][n - 1];
            assert_eq!(row["all"], c["all"], "{fam} {pattern} {n}");
            assert_eq!(row["good"], c["good"], "{fam} {pattern} {n}");
        }
    }
}

#[test]
fn constants_and_schema() {
    let v = json(&["constants"]);
    assert!(v["rho"].as_str().unwrap().starts_with("0.6345"));
    assert!(v["b"].as_str().unwrap().starts_with("2.5183"));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["engine"], "asymptotic");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["a", "b", "command", "engine", "precision", "residual_f", "residual_fv", "rho", "schema_version", "sigma"]);
}

#[test]
fn asym_ratio_compare_simulate() {
    let v = json(&["asym", "--family", "plane-binary", "--pattern", "(()())", "--n", "101"]);
    assert_eq!(v["K"], 0.25);
    assert_eq!(v["parity"], "odd_only");
    let v = json(&["asym", "--family", "b", "--pattern", "(()())", "--n", "100"]);
    assert_eq!(v["estimate"], 0.0);
    let v = json(&["ratio", "--family", "b", "--pattern", "()", "--N", "21"]);
    assert_eq!(v["limit"], "1/n");
    assert!(v["rows"].as_array().unwrap().iter().all(|r| (r["scaled_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-12));
    let v = json(&["compare", "--family", "t", "--pattern1", "(()())", "--pattern2", "(()(()))"]);
    assert_eq!(v["verdict"], "ordered");
    let v = json(&["simulate", "--family", "b", "--pattern", "()", "--n", "7", "--trials", "1000", "--seed", "5"]);
    let again = json(&["simulate", "--family", "b", "--pattern", "()", "--n", "7", "--trials", "1000", "--seed", "5"]);
    assert_eq!(v, again);
    assert_eq!(v["exact"], "1/7");
}

#[test]
fn selfcheck_passes() {
    let out = treembed(&["--format", "plain", "selfcheck"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("mismatches: 0"));
}

#[test]
fn formats_and_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_treembed"))
        .args(["count", "--family", "b", "--pattern", "(()())", "--n", "5"])
        .env("TREEMBED_FORMAT", "csv")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,pattern,n,all,good"));
    assert_eq!(lines.next(), Some("plane-binary,(()()),5,10,8"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| treembed(args).status.code();
    assert_eq!(code(&["count", "--family", "b", "--pattern", "(()())"]), Some(2));
    assert_eq!(code(&["count", "--family", "b", "--pattern", "(()())", "--n", "5", "--bogus"]), Some(2));
    assert_eq!(code(&["series", "--family", "v", "--pattern", "(()()())", "--N", "9"]), Some(3));
    assert_eq!(code(&["count", "--family", "t", "--pattern", "();()", "--n", "5"]), Some(3));
    assert_eq!(code(&["count", "--family", "b", "--pattern", "()", "--n", "31"]), Some(4));
    let out = treembed(&["count", "--family", "b", "--pattern", "()", "--n", "31"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource"));
    assert!(out.stdout.is_empty());
}

#[test]
fn force_warns() {
    let out = treembed(&["count", "--family", "b", "--pattern", "(()())", "--n", "7", "--force"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
