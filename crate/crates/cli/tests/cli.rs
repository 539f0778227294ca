//! End-to-end tests of the binary: golden outputs, exit codes, determinism
//! and structural validation of the JSON outputs against the shipped
//! schemas.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthorook"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Minimal structural validator: type unions, enums, required keys, nested
/// properties, array items and integer minimums. Enough to keep the shipped
/// schemas and the emitted JSON in lockstep.
fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(types) = schema.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|t| t.as_str()).collect(),
            _ => vec![],
        };
        let actual = match value {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) if n.is_i64() || n.is_u64() => "integer",
            Value::Number(_) => "number",
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        if !allowed.is_empty() && !allowed.contains(&actual) {
            return Err(format!("{path}: expected {allowed:?}, got {actual}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(|e| e.as_array()) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(|m| m.as_i64()) {
        if let Some(v) = value.as_i64() {
            if v < min {
                return Err(format!("{path}: {v} below minimum {min}"));
            }
        }
    }
    if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
        for key in required.iter().filter_map(|k| k.as_str()) {
            if value.get(key).is_none() {
                return Err(format!("{path}: missing required key {key}"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (
        schema.get("properties").and_then(|p| p.as_object()),
        value.as_object(),
    ) {
        for (key, sub) in props {
            if let Some(v) = obj.get(key) {
                validate(sub, v, &format!("{path}.{key}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

#[test]
fn diagram_text_matches_the_reference_grid() {
    let out = run(&[
        "diagram",
        "--family",
        "B",
        "--rank",
        "6",
        "--placement",
        "e1, e2+e5, e3-e6",
    ]);
    assert!(out.status.success());
    let expected = concat!(
        "      1  2  3  4  5  6\n",
        "   1\n",
        "   2  +\n",
        "   3  +  +\n",
        "   4  +  +  +\n",
        "   5  +  .  .  .\n",
        "   6  +  +  x  -  -\n",
        "   0  x  -  -  -  -  -\n",
        "  -6  .  +  .  .  -  0\n",
        "  -5  .  x  -  -  0\n",
        "  -4  .  .  .  0\n",
        "  -3  .  .  0\n",
        "  -2  .  0\n",
        "  -1  0\n",
    );
    assert_eq!(stdout(&out), expected);
}

#[test]
fn diagram_empty_placement_is_all_dots() {
    let out = run(&["diagram", "--family", "D", "--rank", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // skip the header and the row-label column; cells hold only dots and
    // the antidiagonal zeros
    for line in text.lines().skip(1) {
        let cells = if line.len() > 4 { &line[4..] } else { "" };
        assert!(
            cells.chars().all(|c| matches!(c, '.' | '0' | ' ')),
            "unexpected cell in {line:?}"
        );
    }
    assert!(text.contains('.'));
}

#[test]
fn diagram_json_validates_and_round_trips() {
    let out = run(&[
        "diagram",
        "--family",
        "B",
        "--rank",
        "6",
        "--placement",
        "e1,e2+e5,e3-e6",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: Value = serde_json::from_str(&stdout(&out)).unwrap();
    validate(&schema("diagram.v1.schema.json"), &value, "$").unwrap();
    assert_eq!(value["dim_diagram"], 20);
    assert_eq!(value["dim_weyl"], 20);
    assert_eq!(value["l"], 25);
    let marks = value["marks"].as_array().unwrap();
    assert_eq!(marks.len(), 36);
    let crosses = marks.iter().filter(|m| m["mark"] == "x").count();
    assert_eq!(crosses, 3);
}

#[test]
fn dim_reports_example_statistics() {
    let out = run(&[
        "dim",
        "--family",
        "B",
        "--rank",
        "6",
        "--placement",
        "e1,e2+e6,e3+e5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("l = 25, s = 3, d = 2"));
    assert!(text.contains("dim (diagram) = 18"));
    assert!(text.contains("dim (weyl)    = 18"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // 2: token parse error
    let out = run(&["diagram", "--family", "B", "--rank", "2", "--placement", "ex1"]);
    assert_eq!(out.status.code(), Some(2));
    // 2: unknown family
    let out = run(&["diagram", "--family", "Q", "--rank", "2", "--placement", "e1"]);
    assert_eq!(out.status.code(), Some(2));
    // 3: valid tokens, invalid placement, with the clash named
    let out = run(&[
        "diagram",
        "--family",
        "B",
        "--rank",
        "2",
        "--placement",
        "e1-e2,e1+e2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column clash in column 1"), "stderr: {err}");
    // 3: rank too small
    let out = run(&["diagram", "--family", "B", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(3));
    // 3: prime below the matrix size
    let out = run(&["verify", "orbit", "--family", "B", "--rank", "3", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn atlas_b2_rows_and_determinism() {
    let out = run(&["atlas", "--family", "B", "--rank", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,rank,placement,l,s,d,dim,plus,minus,codim"
    );
    assert_eq!(lines.len(), 6, "header plus five placements");
    assert!(lines[1].starts_with("B,2,,0,0,0,0"));
    // dim = l − s − 2d = plus + minus = 2·codim on every row
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        let get = |k: usize| cols[cols.len() - 7 + k].parse::<i64>().unwrap();
        let (l, s, d, dim, plus, minus, codim) =
            (get(0), get(1), get(2), get(3), get(4), get(5), get(6));
        assert_eq!(dim, l - s - 2 * d);
        assert_eq!(dim, plus + minus);
        assert_eq!(dim, 2 * codim);
    }
    let again = run(&["atlas", "--family", "B", "--rank", "2"]);
    assert_eq!(out.stdout, again.stdout, "atlas must be byte-identical");
}

#[test]
fn atlas_json_validates() {
    let out = run(&["atlas", "--family", "D", "--rank", "3", "--format", "json"]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row_schema = schema("atlas_row.v1.schema.json");
    for row in rows.as_array().unwrap() {
        validate(&row_schema, row, "$").unwrap();
    }
    assert_eq!(rows.as_array().unwrap().len(), 7);
}

#[test]
fn atlas_rank_cap() {
    let out = run(&["atlas", "--family", "B", "--rank", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_orbit_report_validates() {
    let out = run(&["verify", "orbit", "--family", "B", "--rank", "2", "--prime", "5"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    validate(&schema("verify_report.v1.schema.json"), &report, "$").unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["cases"], 17);
    let orbit_schema = schema("orbit_report.v1.schema.json");
    for detail in report["details"].as_array().unwrap() {
        validate(&orbit_schema, detail, "$.details").unwrap();
    }
}

#[test]
fn verify_mackey_sampled_report_validates() {
    let out = run(&[
        "verify", "mackey", "--family", "B", "--rank", "2", "--prime", "5", "--sample", "25",
        "--seed", "11",
    ]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    validate(&schema("verify_report.v1.schema.json"), &report, "$").unwrap();
    let mackey_schema = schema("mackey_report.v1.schema.json");
    for detail in report["details"].as_array().unwrap() {
        validate(&mackey_schema, detail, "$.details").unwrap();
        assert_eq!(detail["checked"], 25);
        assert_eq!(detail["mode"], "sampled(25,11)");
    }
}

#[test]
fn verify_lengths_passes_on_b4() {
    let out = run(&["verify", "lengths", "--family", "B", "--rank", "4"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["failures"], 0);
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let a = run(&[
        "verify", "lengths", "--family", "D", "--rank", "4", "--jobs", "1",
    ]);
    let b = run(&[
        "verify", "lengths", "--family", "D", "--rank", "4", "--jobs", "4",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
