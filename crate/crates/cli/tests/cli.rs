use std::process::Command;

use serde_json::Value;
use sympmod_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["sympmod"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn dim_examples() {
    assert_eq!(ok(&["dim", "--p", "5", "--g", "4", "--c", "0", "--eps", "0"]), "42\n");
    assert_eq!(ok(&["dim", "--p", "5", "--g", "1", "--c", "0", "--eps", "0"]), "2\n");
    for method in ["count", "formula", "polynomial"] {
        assert_eq!(ok(&["dim", "--p", "7", "--g", "3", "--c", "0", "--eps", "0", "--method", method]), "84\n");
    }
}

#[test]
fn dim_bad_prime() {
    let (code, _, err) = invoke(&["dim", "--p", "4", "--g", "2", "--c", "0", "--eps", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("p must be an odd prime ≥ 5"), "{err}");
    assert_eq!(invoke(&["dim", "--p", "7", "--g", "2", "--c", "3", "--eps", "0"]).0, 2);
    assert_eq!(invoke(&["dim", "--p", "7", "--g", "2"]).0, 2);
}

#[test]
fn dim_precision() {
    let (code, _, err) = invoke(&["dim", "--p", "13", "--g", "5", "--c", "0", "--eps", "0", "--precision-bits", "4"]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(ok(&["dim", "--p", "13", "--g", "5", "--c", "0", "--eps", "0", "--precision-bits", "512"]).trim(), {
        ok(&["dim", "--p", "13", "--g", "5", "--c", "0", "--eps", "0", "--method", "count"]).trim().to_string()
    });
}

#[test]
fn dim_json_uses_strings() {
    let v = json(&["dim", "--p", "13", "--g", "5", "--c", "1", "--eps", "1", "--format", "json"]);
    assert!(v["dim"].is_string());
    assert_eq!(v["p"], 13);
    let csv = ok(&["dim", "--p", "5", "--g", "4", "--c", "0", "--eps", "0", "--format", "csv"]);
    assert_eq!(csv, "p,g,c,eps,method,dim\n5,4,0,0,formula,42\n");
}

#[test]
fn coloring_counts() {
    assert_eq!(ok(&["colorings", "--p", "7", "--g", "2", "--c", "0", "--eps", "0", "--count"]), "14\n");
    assert_eq!(ok(&["colorings", "--p", "5", "--g", "1", "--c", "1", "--eps", "1", "--count"]), "0\n");
    assert_eq!(ok(&["colorings", "--p", "5", "--g", "1", "--c", "1", "--eps", "1"]), "0\n");
}

#[test]
fn coloring_list() {
    let out = ok(&["colorings", "--p", "5", "--g", "3", "--c", "0", "--eps", "1", "--list", "--format", "json"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["a"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["b"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["t"], serde_json::json!([2]));

    let csv = ok(&["colorings", "--p", "7", "--g", "2", "--c", "0", "--eps", "0", "--list", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 15);
    assert!(csv.starts_with("a_1,a_2,b_1,b_2,eps,n_1,n_2\n"));

    let plain = ok(&["colorings", "--p", "7", "--g", "2", "--c", "0", "--eps", "0", "--list"]);
    assert_eq!(plain.lines().count(), 14);
    assert_eq!(plain.lines().next(), Some("a=[0, 0] b=[0, 0] t=[]"));
}

#[test]
fn coloring_cap() {
    let (code, _, err) = invoke(&["colorings", "--p", "11", "--g", "4", "--c", "0", "--eps", "0", "--list", "--cap", "10"]);
    assert_eq!(code, 4);
    assert!(err.contains("cap"));
}

#[test]
fn character_examples() {
    let out = ok(&["character", "--p", "5", "--g", "3", "--c", "0", "--eps", "1"]);
    assert_eq!(out, "(0,0,0) 1\nhighest weight: 0\n");

    let v = json(&["character", "--p", "5", "--g", "1", "--c", "0", "--eps", "0", "--format", "json"]);
    let weights: Vec<Value> = v["entries"].as_array().unwrap().iter().map(|e| e["weight"].clone()).collect();
    assert_eq!(weights, vec![serde_json::json!([-1]), serde_json::json!([1])]);

    let out = ok(&["character", "--p", "5", "--g", "2", "--c", "0", "--eps", "1"]);
    assert_eq!(out, "empty module\n");
    let v = json(&["character", "--p", "5", "--g", "2", "--c", "0", "--eps", "1", "--format", "json"]);
    assert_eq!(v["note"], "empty module");
    assert!(v["entries"].as_array().unwrap().is_empty());
}

#[test]
fn reduced_character() {
    let v = json(&["character", "--p", "5", "--g", "1", "--c", "0", "--eps", "0", "--reduced", "--format", "json"]);
    assert_eq!(v["modulus"], 4);
    let weights: Vec<Value> = v["entries"].as_array().unwrap().iter().map(|e| e["weight"].clone()).collect();
    assert_eq!(weights, vec![serde_json::json!([1]), serde_json::json!([3])]);
}

#[test]
fn table_examples() {
    let v = json(&["table", "--g", "3", "--pmax", "5", "--format", "json"]);
    let weights: Vec<Value> = v.as_array().unwrap().iter().map(|r| r["highest_weight"].clone()).collect();
    assert_eq!(
        weights,
        vec![serde_json::json!([0, 0, 1]), serde_json::json!([0, 0, 0]), serde_json::json!([0, 1, 0]), serde_json::json!([1, 0, 0])]
    );

    let v = json(&["table", "--g", "2", "--pmax", "5", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 3);

    let csv = ok(&["table", "--g", "4", "--pmax", "5", "--format", "csv"]);
    assert!(csv.lines().any(|l| l == "5,0,0,I,0,0,0,1,42,9"), "{csv}");
    assert_eq!(invoke(&["table", "--g", "3", "--pmax", "4"]).0, 2);
}

#[test]
fn fit_examples() {
    let out = ok(&["fit", "--g", "2", "--c", "0", "--eps", "0"]);
    assert!(out.contains("diff: empty"), "{out}");
    assert!(out.starts_with("(1/24)*p^3 - (1/24)*p"), "{out}");

    let v = json(&["fit", "--g", "3", "--c", "0", "--eps", "1", "--format", "json"]);
    assert_eq!(v["degree"], 6);
    assert_eq!(v["diff"], serde_json::json!([]));

    let out = ok(&["fit", "--g", "1", "--c", "0", "--eps", "0"]);
    assert!(out.starts_with("(1/2)*p - 1/2\n"), "{out}");

    let (code, _, err) = invoke(&["fit", "--g", "3", "--c", "0", "--eps", "0", "--primes", "5,7,11"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn verify_small_grid() {
    for suite in ["oracle", "closed-form", "weyl", "jantzen", "alcove", "lemmas"] {
        let out = ok(&["verify", "--suite", suite, "--pmax", "11", "--gmax", "4"]);
        assert!(out.ends_with("PASS\n"), "{suite}: {out}");
    }
    let v = json(&["verify", "--suite", "jantzen", "--pmax", "13", "--format", "json"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_default_suites() {
    for suite in ["oracle", "appendixb", "closed-form", "jantzen", "interpolate"] {
        let out = ok(&["verify", "--suite", suite, "--pmax", "13", "--gmax", "5"]);
        assert!(out.ends_with("PASS\n"), "{suite}: {out}");
    }
}

#[test]
fn deterministic_output() {
    let args = ["table", "--g", "3", "--pmax", "11", "--format", "csv"];
    assert_eq!(ok(&args), ok(&args));
    let stamped = ok(&["table", "--g", "3", "--pmax", "5", "--timestamp"]);
    assert!(stamped.starts_with("# generated at unix time "));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("sympmod-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dim.txt");
    let out = ok(&["dim", "--p", "5", "--g", "4", "--c", "0", "--eps", "0", "--output", path.to_str().unwrap()]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "42\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sympmod");
    let out = Command::new(bin).args(["dim", "--p", "5", "--g", "4", "--c", "0", "--eps", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "42\n");

    let out = Command::new(bin).args(["dim", "--p", "9", "--g", "2", "--c", "0", "--eps", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(bin)
        .args(["colorings", "--p", "13", "--g", "5", "--c", "0", "--eps", "0", "--list"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    let dir = std::env::temp_dir().join(format!("sympmod-bin-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(bin)
        .env(sympmod_cli::OUTPUT_DIR_ENV, &dir)
        .args(["fit", "--g", "1", "--c", "0", "--eps", "0", "--output", "fit.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(dir.join("fit.txt")).unwrap().starts_with("(1/2)*p - 1/2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
