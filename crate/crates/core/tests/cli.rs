//! End-to-end runs of the `ekl` binary.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ekl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn run_json(args: &[&str], stdin: &str) -> (i32, Value) {
    let (code, out) = run(args, stdin);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
    )
}

#[test]
fn ekl_reports_gram_and_class() {
    let (code, v) = run_json(
        &["ekl"],
        r#"{"field":"QQ","vars":["x1","x2"],"polys":["2*x1","3*x2^2"]}"#,
    );
    assert_eq!(code, 0);
    assert_eq!(v["gw_class"], "1*H");
    assert_eq!(v["gram"], serde_json::json!([["0", "1/6"], ["1/6", "0"]]));
    assert_eq!(v["invariants"]["rank"], 2);
    assert_eq!(v["invariants"]["disc"], "-1");
}

#[test]
fn exit_codes_follow_the_error_class() {
    let (code, v) = run_json(&["ekl"], r#"{"polys":["x1^2","x1*x2"]}"#);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "NotIsolatedZero");
    let (code, v) = run_json(&["classify"], "{not json");
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "ParseError");
    let (code, _) = run_json(&["milnor"], r#"{"poly":"x1^^2 + x2"}"#);
    assert_eq!(code, 1);
    let (code, v) = run_json(&["ekl", "--field", "Fp:9"], r#"{"polys":["x"]}"#);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "NotPrime");
}

#[test]
fn field_flag_overrides_the_job() {
    let job = r#"{"field":"QQ","gram":[[1,0],[0,2]]}"#;
    let (_, q) = run_json(&["classify"], job);
    let (_, f7) = run_json(&["classify", "--field", "Fp:7"], job);
    assert_eq!(q["field"], "QQ");
    assert_eq!(f7["field"], "Fp:7");
    assert_eq!(f7["invariants"]["disc"], "1");
}

#[test]
fn input_file_and_pretty_output() {
    let dir = std::env::temp_dir().join(format!("ekl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(&path, r#"{"poly":"x1^2 + x2^3"}"#).unwrap();
    let (code, out) = run(
        &["milnor", "--input", path.to_str().unwrap(), "--pretty"],
        "",
    );
    assert_eq!(code, 0);
    assert!(out.contains("class: 1*H"), "{out}");
    assert!(out.contains("disc: -1"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ade_table_passes_every_row() {
    let (code, v) = run_json(&["ade-table"], "");
    assert_eq!(code, 0);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    let (_, text) = run(&["ade-table", "--pretty"], "");
    assert_eq!(
        text.lines().filter(|l| l.ends_with("PASS")).count(),
        12,
        "{text}"
    );
}

#[test]
fn fiber_sum_and_etale_degree() {
    let (code, v) = run_json(&["fiber-sum"], r#"{"poly":"x^3 - x","ys":[0,6,1]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["conserved"], true);
    let (_, v) = run_json(
        &["fiber-sum"],
        r#"{"vars":["x1","x2"],"polys":["x1^3*x2 + x1 - x1^3","x2"],"ys":[[0,0],[0,2],[0,3]],"classifier":"RR"}"#,
    );
    assert_eq!(v["conserved"], false);
    assert_eq!(v["witnesses"][0]["difference"], "signature: -1 vs 1");
    let (code, v) = run_json(
        &["degree-etale"],
        r#"{"polys":["x^2+1"],"modulus":"t^2+1","point":["t"],"target":[0]}"#,
    );
    assert_eq!(code, 0);
    assert_eq!(v["gw_class"], "1*H");
    let (_, v) = run_json(&["node-type"], r#"{"poly":"x1^2 + 2*x2^2","point":[0,0]}"#);
    assert_eq!(v["gw_class"], "<2>");
}

#[test]
fn output_is_deterministic() {
    let job = r#"{"vars":["x1","x2"],"polys":["x1^2 - x2^3","x1*x2 + x2^4"]}"#;
    let first = run(&["ekl"], job);
    for _ in 0..3 {
        assert_eq!(run(&["ekl"], job), first);
    }
}
