//! End-to-end checks of the `zr` binary: output formats, exit codes,
//! determinism, and JSON schema conformance.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zr"))
}

fn run(args: &[&str]) -> Output {
    zr().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Validate a JSON value against the subset of JSON Schema our shipped
/// schemas use: type (possibly a list), required, properties,
/// additionalProperties, items, enum.
fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(types) = schema.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|v| v.as_str()).collect(),
            _ => return Err(format!("{path}: malformed type keyword")),
        };
        let actual = match value {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) => {
                if n.is_i64() || n.is_u64() {
                    "integer"
                } else {
                    "number"
                }
            }
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        let matches = allowed
            .iter()
            .any(|&t| t == actual || (t == "number" && actual == "integer"));
        if !matches {
            return Err(format!("{path}: expected {allowed:?}, got {actual}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(|e| e.as_array()) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let Value::Object(map) = value {
        if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
            for key in required.iter().filter_map(|k| k.as_str()) {
                if !map.contains_key(key) {
                    return Err(format!("{path}: missing required field {key}"));
                }
            }
        }
        let props = schema.get("properties").and_then(|p| p.as_object());
        for (key, sub) in map {
            let sub_path = format!("{path}.{key}");
            if let Some(prop_schema) = props.and_then(|p| p.get(key)) {
                validate(prop_schema, sub, &sub_path)?;
            } else {
                match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{path}: unexpected field {key}"))
                    }
                    Some(extra_schema) if extra_schema.is_object() => {
                        validate(extra_schema, sub, &sub_path)?
                    }
                    _ => {}
                }
            }
        }
    }
    if let (Value::Array(items), Some(item_schema)) = (value, schema.get("items")) {
        for (i, item) in items.iter().enumerate() {
            validate(item_schema, item, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn load_schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, document: &str) {
    let schema = load_schema(schema_name);
    let value: Value = serde_json::from_str(document).expect("valid JSON");
    if let Err(e) = validate(&schema, &value, "$") {
        panic!("{schema_name} violation: {e}\ndocument: {document}");
    }
}

#[test]
fn threshold_formats_and_determinism() {
    let plain = run(&["threshold", "2", "1", "2"]);
    assert_eq!(code_of(&plain), 0);
    assert!(stdout(&plain).contains("1/4"));
    assert!(stdout(&plain).contains("0.250000000000"));

    let again = run(&["threshold", "2", "1", "2"]);
    assert_eq!(plain.stdout, again.stdout, "identical invocations must match");

    let json = run(&["threshold", "3", "2", "3", "--json"]);
    assert_eq!(code_of(&json), 0);
    assert_valid("threshold.schema.json", &stdout(&json));
    let doc: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["p_star"], "2/27");

    let csv = run(&["threshold", "3", "1", "2", "--csv"]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,ell,L,p_star,decimal");
    assert!(lines.next().unwrap().starts_with("3,1,2,1/3,"));
}

#[test]
fn threshold_usage_errors_exit_2() {
    assert_eq!(code_of(&run(&["threshold", "2", "1"])), 2);
    assert_eq!(code_of(&run(&["threshold", "3", "3", "2"])), 2); // ell >= q
    assert_eq!(code_of(&run(&["nonsense"])), 2);
}

#[test]
fn construct_golden_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    let out = run(&["construct", "3", "1", "2", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "3 6 3\n1 1 2 2 3 3\n2 3 1 3 1 2\n3 2 3 1 2 1\n"
    );
    // m = 7 blows the default column budget: exit 3
    let out = run(&["construct", "3", "1", "2", "7"]);
    assert_eq!(code_of(&out), 3);
    // binary analog generates with a note
    let out = run(&["construct", "2", "1", "2", "1"]);
    assert_eq!(code_of(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cross-checks"));
}

#[test]
fn tradeoff_golden_header_and_rows() {
    let out = run(&["tradeoff", "3", "1", "2", "--m-list", "1,2,3"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,M,n,p_exact,p_star,c_over_m,residual");
    assert_eq!(lines[1], "1,3,6,1/2,1/3,1/9,1/18");
    assert_eq!(lines[2], "2,6,90,2/5,1/3,1/18,1/90");
    assert_eq!(lines[3], "3,9,1680,3/8,1/3,1/27,1/216");
}

#[test]
fn verify_verdicts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    run(&["construct", "3", "1", "2", "1", "--out", path.to_str().unwrap()]);
    let file = path.to_str().unwrap();

    let pass = run(&["verify", file, "1/3", "1", "2"]);
    assert_eq!(code_of(&pass), 0);
    assert_valid("verdict.schema.json", &stdout(&pass));
    let doc: Value = serde_json::from_str(&stdout(&pass)).unwrap();
    assert_eq!(doc["verdict"], "PASS");

    let fail = run(&["verify", file, "1/2", "1", "2"]);
    assert_eq!(code_of(&fail), 1);
    assert_valid("verdict.schema.json", &stdout(&fail));
    let doc: Value = serde_json::from_str(&stdout(&fail)).unwrap();
    assert_eq!(doc["verdict"], "FAIL");
    assert!(doc["witness_center"].is_array());
    assert_eq!(doc["captured_rows"].as_array().unwrap().len(), 2);

    // parse failures exit 2
    let bad = run(&["verify", "/nonexistent/file", "1/2", "1", "2"]);
    assert_eq!(code_of(&bad), 2);
    let garbage = dir.path().join("garbage.txt");
    std::fs::write(&garbage, "not a codebook").unwrap();
    let bad = run(&["verify", garbage.to_str().unwrap(), "1/2", "1", "2"]);
    assert_eq!(code_of(&bad), 2);
}

#[test]
fn radius_report_schema_and_sandwich() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    run(&["construct", "3", "1", "2", "1", "--out", path.to_str().unwrap()]);
    let out = run(&[
        "radius",
        path.to_str().unwrap(),
        "--list",
        "0,1",
        "--omega",
        "2/3,1/3",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_valid("radius_report.schema.json", &stdout(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["average"], "1/2");
    assert_eq!(doc["chebyshev"], "1/2");
    assert_eq!(doc["weighted"]["2/3,1/3"], "1/3");
    assert_eq!(doc["weighted"]["uniform"], "1/2");
    // the report echoes average <= relaxed <= chebyshev
    let relaxed = doc["relaxed"].as_f64().unwrap();
    assert!(0.5 <= relaxed + 1e-6 && relaxed <= 0.5 + 1e-6);
}

#[test]
fn radius_budget_limited_partial_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    run(&["construct", "3", "1", "2", "2", "--out", path.to_str().unwrap()]);
    // 3^90 centers is far beyond any budget: chebyshev fields are omitted,
    // not approximated, and the exit code marks the partial report
    let out = zr()
        .args(["radius", path.to_str().unwrap(), "--list", "0,1"])
        .env("ZR_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 3);
    assert_valid("radius_report.schema.json", &stdout(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc.get("chebyshev").is_none());
    assert!(doc.get("relaxed").is_some());
}

#[test]
fn radius_lp_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    run(&["construct", "3", "1", "2", "1", "--out", path.to_str().unwrap()]);
    let dump = dir.path().join("lp.tsv");
    let out = run(&[
        "radius",
        path.to_str().unwrap(),
        "--list",
        "0,1",
        "--dump-lp",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    let text = std::fs::read_to_string(&dump).unwrap();
    // objective row + 6 block rows + 2 distance rows
    assert_eq!(text.lines().count(), 9);
    // variables: 6 blocks * 3 + t + 2 surplus = 21, plus rhs on constraint rows
    assert_eq!(text.lines().next().unwrap().split('\t').count(), 21);
    assert_eq!(text.lines().nth(1).unwrap().split('\t').count(), 22);
}

#[test]
fn propsuite_deterministic_and_scriptable() {
    let a = run(&["propsuite", "--seed", "7", "--trials", "4"]);
    assert_eq!(code_of(&a), 0);
    let b = run(&["propsuite", "--seed", "7", "--trials", "4"]);
    assert_eq!(a.stdout, b.stdout, "propsuite must be deterministic per seed");
    let text = stdout(&a);
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
    assert!(text.lines().last().unwrap().starts_with("propsuite:"));
}

#[test]
fn threads_flag_accepted() {
    let out = zr()
        .args(["--threads", "2", "threshold", "2", "1", "2"])
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert!(stdout(&out).contains("1/4"));
}
