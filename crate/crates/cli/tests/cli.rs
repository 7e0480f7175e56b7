use std::process::{Command, Output};

use serde_json::Value;

fn umbral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = umbral(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn basic_poly_carlitz() {
    let v = json(&["basic-poly", "--a", "1", "--b", "1/2", "--p", "1", "--n", "3"]);
    assert_eq!(v["command"], "basic-poly");
    let records = v["result"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    assert_eq!(strings(&records[3]["coeffs"]), ["0", "3", "3", "1"]);
    assert_eq!(strings(&records[2]["coeffs"]), ["0", "1", "1"]);
}

#[test]
fn basic_poly_methods_agree() {
    let args = ["basic-poly", "--a", "2/3", "--b", "-1/4", "--p", "2", "--n", "8"];
    let closed = json(&args);
    let generic = json(&[&args[..], &["--method", "generic"]].concat());
    assert_eq!(closed["result"], generic["result"]);
}

#[test]
fn f_series_carlitz() {
    let v = json(&["f-series", "--a", "1", "--b", "1/2", "--p", "1", "--order", "4"]);
    assert_eq!(strings(&v["result"]), ["0", "1", "1/2", "1/2", "5/8"]);
}

#[test]
fn fuss_catalan() {
    let v = json(&["fuss", "--p", "2", "--order", "6"]);
    let terms: Vec<i64> = v["result"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(terms, [1, 1, 2, 5, 14, 42, 132]);
    assert_eq!(v["diagnostics"]["functional_equation_holds"], true);
}

#[test]
fn bessel_poly_and_egf() {
    let v = json(&["bessel-poly", "--n", "2"]);
    let y2 = v["result"].as_array().unwrap()[2].clone();
    assert_eq!(strings(&y2["coeffs"]), ["1", "3", "3"]);
    let e = json(&["egf-check", "--t", "2/3", "--order", "8"]);
    assert_eq!(e["result"]["holds"], true);
}

#[test]
fn moments_match_closed_values() {
    let v = json(&["moments", "--dist", "ig", "--t", "1", "--n", "3"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (row, want) in rows.iter().zip([1.0, 1.0, 2.0, 7.0]) {
        let got = row["value"].as_f64().unwrap();
        assert!((got - want).abs() < 1e-8 * want, "{got} vs {want}");
    }
    assert!(v["diagnostics"]["max_rel_dev"].as_f64().unwrap() < 1e-8);
}

#[test]
fn checks_pass() {
    for args in [
        vec!["semigroup-check", "--s", "1/2", "--t", "1/2"],
        vec!["kolmogorov-check"],
        vec!["factorization-check", "--t", "2"],
        vec!["oeis", "--id", "A001517", "--count", "6", "--crosscheck"],
    ] {
        let out = umbral(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let _: Value = serde_json::from_slice(&out.stdout).unwrap();
    }
}

#[test]
fn oeis_terms() {
    let v = json(&["oeis", "--id", "A001515", "--count", "5"]);
    assert_eq!(v["result"]["id"], "A001515");
    assert_eq!(strings(&v["result"]["terms"]), ["1", "2", "7", "37", "266"]);
}

#[test]
fn csv_output() {
    let out = umbral(&["oeis", "--id", "A001515", "--count", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains('1') && text.contains('7'), "{text}");
    let out = umbral(&["semigroup-check", "--s", "1", "--t", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("abs_dev"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn reals_round_trip() {
    let out = umbral(&["moments", "--dist", "bessel", "--t", "3", "--n", "4"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again = serde_json::to_vec_pretty(&v).unwrap();
    let w: Value = serde_json::from_slice(&again).unwrap();
    assert_eq!(v, w);
}

#[test]
fn output_is_deterministic() {
    let args = ["factorization-check", "--t", "1/2"];
    assert_eq!(umbral(&args).stdout, umbral(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["basic-poly", "--a", "0", "--b", "1", "--p", "1", "--n", "3"],
        vec!["moments", "--dist", "ig", "--t", "0", "--n", "2"],
        vec!["oeis", "--id", "A000000"],
        vec!["fuss", "--p", "0"],
        vec!["no-such-command"],
        vec!["basic-poly", "--a", "1/0", "--b", "1", "--p", "1", "--n", "3"],
    ] {
        let out = umbral(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("error"), "{args:?}: {err}");
    }
}

#[test]
fn help_exits_0() {
    let out = umbral(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify-all"));
}
