use std::process::{Command, Output};

use serde_json::Value;

fn plethysm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plethysm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = plethysm(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sum_examples() {
    let out = plethysm(&["sum", "--lambda", "3", "--m", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "5\n");
    assert_eq!(stdout(&plethysm(&["sum", "--lambda", "1", "--m", "9"])), "1\n");
    let v = json(&["sum", "--lambda", "2,2", "--m", "2", "--verify"]);
    assert_eq!(v["sum"], v["oracle"]);
}

#[test]
fn guard_exits_with_two() {
    let out = plethysm(&["oracle", "--lambda", "4", "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_plethysm"))
        .args(["classes", "--n", "3", "--m", "3"])
        .env("PLETHYSM_MAX_MATRICES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = plethysm(&["sum", "--lambda", "3,3", "--m", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_is_rejected() {
    assert!(!plethysm(&["sum", "--lambda", "1,3", "--m", "2"]).status.success());
    assert!(!plethysm(&["sum", "--lambda", "3", "--m", "2", "--bogus"]).status.success());
    assert!(!plethysm(&["nchar", "--n", "2", "--m", "2", "--max-matrices", "0"]).status.success());
}

#[test]
fn oracle_lists_constituents() {
    let v = json(&["oracle", "--lambda", "3", "--m", "3", "--full"]);
    let keys: Vec<&String> = v["coefficients"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["[9]", "[7,2]", "[6,3]", "[5,2,2]", "[4,4,1]"]);
    assert_eq!(v["sum"], 5);
    let out = plethysm(&["oracle", "--lambda", "3", "--m", "3", "--sum-only"]);
    assert_eq!(stdout(&out), "5\n");
}

#[test]
fn nchar_is_keyed_by_cycle_type() {
    let v = json(&["nchar", "--n", "3", "--m", "2"]);
    assert_eq!(v["[1,1,1]"], 11);
    assert_eq!(v["[3]"], 2);
    assert_eq!(v["[2,1]"], 1);
}

#[test]
fn quasipoly_examples() {
    let v = json(&["quasipoly", "--rho", "1,1"]);
    assert_eq!(v["period"], 1);
    assert_eq!(v["constituents"], serde_json::json!([["1/1", "1/1"]]));
    let v = json(&["quasipoly", "--lambda", "1"]);
    assert_eq!(v["constituents"], serde_json::json!([["1/1"]]));
    let v = json(&["quasipoly", "--rho", "2"]);
    assert_eq!(v["period"], 2);
    assert_eq!(v["constituents"], serde_json::json!([["1/1"], ["0/1"]]));
    let out = plethysm(&["quasipoly", "--rho", "3", "--max-period", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classes_schema() {
    let v = json(&["classes", "--n", "2", "--m", "2"]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 2);
    for c in list {
        assert!(c["transpose_fixed"].as_bool().unwrap());
        assert_eq!(c["canonical_rep"].as_array().unwrap().len(), 4);
        let orbit = c["orbit_size"].as_u64().unwrap();
        let stab = c["stabilizer_size"].as_u64().unwrap();
        assert_eq!(orbit * stab, 4);
        assert!(c["lambda_C"].is_array());
        assert_eq!(c["inner_products"]["[2]"], 1);
    }
    let v = json(&["classes", "--n", "3", "--m", "3"]);
    let fixed = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["transpose_fixed"] == true)
        .count();
    assert_eq!(fixed, 5);
    assert!(v[0].get("lambda_C").is_none());
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["classes", "--n", "4", "--m", "2", "--format", "json"],
        vec!["nchar", "--n", "5", "--m", "3", "--format", "json"],
        vec!["foulkes", "--n-max", "4", "--m-max", "4", "--format", "csv"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut four = args.clone();
        four.extend(["--threads", "4"]);
        assert_eq!(plethysm(&one).stdout, plethysm(&four).stdout, "{args:?}");
    }
}

#[test]
fn paper_suite_selected_groups() {
    let out = plethysm(&["paper-suite", "--only", "m2", "--n-max", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS] m2")).count(), 6);
    let out = plethysm(&["paper-suite", "--only", "fiber", "--nm-max", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("nm <= 6"));
    assert!(!plethysm(&["paper-suite", "--only", "nonsense"]).status.success());
}

#[test]
fn foulkes_small_table() {
    let v = json(&["foulkes", "--n-max", "3", "--m-max", "3"]);
    let cells = v["cells"].as_array().unwrap();
    let get = |n: u64, m: u64| {
        cells
            .iter()
            .find(|c| c["n"] == n && c["m"] == m)
            .map(|c| c["count"].clone())
            .unwrap()
    };
    assert_eq!(get(3, 3), 5);
    assert_eq!(get(2, 2), 2);
    assert_eq!(get(1, 3), 1);
    assert_eq!(v["violations"], serde_json::json!([]));
}
