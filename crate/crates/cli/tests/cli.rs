use assert_cmd::Command;
use serde_json::{json, Value};
use tempfile::TempDir;

fn cmd() -> Command {
    Command::cargo_bin("eqschubert").expect("binary builds")
}

fn run_json(args: &[&str]) -> Value {
    let out = cmd().args(args).assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).expect("stdout is JSON")
}

fn term(t: Value, c: &str) -> Value {
    json!({ "x": [], "t": t, "c": c })
}

#[test]
fn schur_of_one_box() {
    let v = run_json(&["schur", "--n", "2", "--lambda", "1"]);
    assert_eq!(
        v,
        json!([
            { "x": [1, 0], "t": {}, "c": "1" },
            { "x": [0, 1], "t": {}, "c": "1" },
            { "x": [0, 0], "t": { "1": 1 }, "c": "1" },
            { "x": [0, 0], "t": { "2": 1 }, "c": "1" },
        ])
    );
    let out = cmd()
        .args(["--format", "text", "schur", "--n", "2", "--lambda", "1"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(String::from_utf8(out).unwrap(), "x1 + x2 + t1 + t2\n");
}

#[test]
fn schur_of_empty_partition_is_one() {
    let v = run_json(&["schur", "--n", "2", "--lambda", ""]);
    assert_eq!(v, json!([{ "x": [0, 0], "t": {}, "c": "1" }]));
}

#[test]
fn malformed_partition_is_a_usage_error() {
    let assert = cmd()
        .args(["schur", "--n", "2", "--lambda", "1,,2"])
        .assert()
        .code(2);
    let stderr = String::from_utf8_lossy(&assert.get_output().stderr).to_string();
    assert!(stderr.contains("1,,2"), "{stderr}");
    cmd().args(["schur", "--n", "2", "--lambda", "1,2"]).assert().code(2);
    cmd().args(["schur", "--n", "1", "--lambda", "1,1"]).assert().code(2);
}

#[test]
fn product_on_the_projective_line() {
    let v = run_json(&["product", "--n", "1", "--m", "2", "--lambda", "1", "--mu", "1"]);
    assert_eq!(
        v,
        json!({
            "lambda": [1],
            "mu": [1],
            "products": [{
                "nu": [1],
                "coeff": [term(json!({ "1": 1 }), "1"), term(json!({ "2": 1 }), "-1")],
                "certificate": [{ "u": { "1": 1 }, "c": "1" }],
            }],
        })
    );
}

#[test]
fn product_with_unit_and_out_of_box() {
    let v = run_json(&["product", "--n", "2", "--m", "4", "--lambda", "", "--mu", "1"]);
    let products = v["products"].as_array().unwrap();
    assert_eq!(products.len(), 1);
    assert_eq!(products[0]["nu"], json!([1]));
    assert_eq!(products[0]["coeff"], json!([term(json!({}), "1")]));

    cmd()
        .args(["product", "--n", "2", "--m", "4", "--lambda", "3,0", "--mu", "1"])
        .assert()
        .code(2);
    cmd()
        .args(["product", "--n", "3", "--m", "2", "--lambda", "", "--mu", ""])
        .assert()
        .code(2);
}

#[test]
fn table_writes_file_and_prints_summary() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g24.json");
    let out = cmd()
        .args(["table", "--n", "2", "--m", "4", "--out"])
        .arg(&path)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let summary: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(summary["entries"], json!(36));
    assert_eq!(summary["all_positive"], json!(true));

    let table: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table["n"], json!(2));
    assert_eq!(table["m"], json!(4));
    let entries = table["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 36);
    let square = entries
        .iter()
        .find(|e| e["lambda"] == json!([1]) && e["mu"] == json!([1]))
        .unwrap();
    let nus: Vec<&Value> = square["products"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| &p["nu"])
        .collect();
    assert_eq!(nus, vec![&json!([1]), &json!([1, 1]), &json!([2])]);
}

#[test]
fn table_size_guard_exits_3() {
    cmd().args(["table", "--n", "4", "--m", "11"]).assert().code(3);
}

#[test]
fn json_output_is_byte_deterministic() {
    let args = ["table", "--n", "2", "--m", "5"];
    let a = cmd().args(args).assert().success().get_output().stdout.clone();
    let b = cmd().args(args).assert().success().get_output().stdout.clone();
    assert_eq!(a, b);
    let args = ["verify", "--suite", "positivity", "--n", "2", "--m", "4"];
    let a = cmd().args(args).assert().success().get_output().stdout.clone();
    let b = cmd().args(args).assert().success().get_output().stdout.clone();
    assert_eq!(a, b);
}

#[test]
fn verify_suites_pass() {
    for (suite, n, m) in [
        ("pieri", "3", "6"),
        ("positivity", "2", "4"),
        ("specialize", "2", "4"),
        ("intertwine", "2", "4"),
        ("syt", "2", "5"),
    ] {
        let v = run_json(&["verify", "--suite", suite, "--n", n, "--m", m]);
        assert_eq!(v["passed"], json!(true), "{suite}: {v}");
        assert!(v["checked"].as_u64().unwrap() > 0);
        assert_eq!(v["failures"], json!([]));
    }
}

#[test]
fn positivity_report_carries_certificates() {
    let v = run_json(&["verify", "--suite", "positivity", "--n", "2", "--m", "4"]);
    let entries = v["details"]["table"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 36);
    for entry in entries {
        for product in entry["products"].as_array().unwrap() {
            assert!(product["certificate"].is_array(), "{product}");
        }
    }
    assert_eq!(v["details"]["differences_used"], json!([1, 2, 3]));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    cmd()
        .args(["verify", "--suite", "nope", "--n", "2", "--m", "4"])
        .assert()
        .code(2);
}

#[test]
fn out_flag_redirects_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.txt");
    let out = cmd()
        .args(["--format", "text", "--out"])
        .arg(&path)
        .args(["schur", "--n", "1", "--lambda", "2"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("x1^2"), "{written}");
}
