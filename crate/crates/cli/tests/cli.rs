use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn coxeter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = coxeter(&full);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/report.schema.json"
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, args: &[&str], doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
}

const CORPUS: &[&str] = &[
    "A1",
    "A3",
    "B3",
    "H3",
    "I2(6)",
    "~A1",
    "~A2",
    "~G2",
    "(3,3,7)",
    "(3,3,7) x ~A2 x B3 x H3",
];

#[test]
fn json_reports_match_schema() {
    let v = validator();
    for spec in CORPUS {
        for cmd in ["classify", "decompose", "extend"] {
            let (code, doc) = json_of(&[cmd, spec]);
            assert_eq!(code, 0, "{cmd} {spec}");
            assert_valid(&v, &[cmd, spec], &doc);
        }
        let (_, doc) = json_of(&["essential", spec]);
        assert_valid(&v, &["essential", spec], &doc);
        let (code, doc) = json_of(&["roots", spec, "--word", "1 2 1"]);
        if code == 0 {
            assert_valid(&v, &["roots", spec], &doc);
        }
        let (_, doc) = json_of(&["compare", spec, "~A2", "--mode", "comm"]);
        assert_valid(&v, &["compare", spec], &doc);
        let (_, doc) = json_of(&["oracle", spec, "--decompositions"]);
        assert_valid(&v, &["oracle", spec], &doc);
    }
    let (_, doc) = json_of(&["parity", "~A1", "--word", "s0 s1", "--root", "1,0"]);
    assert_valid(&v, &["parity"], &doc);
    assert_eq!(doc["result"]["parity"]["verdict"], "odd");
}

#[test]
fn documented_examples() {
    let (_, d) = json_of(&["decompose", "I2(6)"]);
    assert_eq!(d["result"]["remak"]["m"], 2);
    let names: Vec<&str> = d["result"]["remak"]["finite"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["C2", "W(I2(3))"]);

    let (_, c) = json_of(&["compare", "~A2", "~A1 x ~A1", "--mode", "comm"]);
    assert_eq!(c["result"]["verdict"], "commensurable");

    let (_, e) = json_of(&["essential", "~A1", "--word", "s t"]);
    assert_eq!(e["result"]["verdict"], "essential");
    assert_eq!(e["result"]["detail"]["certificate"], "odd_roots_generate");

    let (_, x) = json_of(&["extend", "~A2"]);
    assert_eq!(x["result"]["identity_holds"], true);
}

#[test]
fn exit_codes() {
    let v = validator();
    let (code, doc) = json_of(&["classify", "vertices: a b; edge: a b 1"]);
    assert_eq!(code, 1);
    assert_valid(&v, &["parse error"], &doc);
    let (code, doc) = json_of(&["oracle", "~A1"]);
    assert_eq!(code, 2);
    assert_valid(&v, &["precondition"], &doc);
    let (code, doc) = json_of(&["--max-order", "100", "oracle", "B4"]);
    assert_eq!(code, 3);
    assert_valid(&v, &["cap"], &doc);
    assert_eq!(coxeter(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(coxeter(&["classify", "A3"]).status.code(), Some(0));
}

#[test]
fn reads_spec_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(["decompose", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"vertices: a b c\nedge: a b 3\nedge: b c 4\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("C2 × W(D3)"), "{text}");
}

#[test]
fn seeded_coxeter_elements_are_reproducible() {
    let a = coxeter(&["essential", "~A3", "--seed", "11"]);
    let b = coxeter(&["essential", "~A3", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("essential"));
}
