use regex::Regex;
use serde_json::Value;

use pd3_core::corpus::Corpus;
use pd3_core::par::Parallelism;
use pd3_core::report::{run_suite, SCHEMA};

/// Validates the subset of JSON Schema used by the shipped schema.
fn validate(schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "number" => v.is_number(),
            "null" => v.is_null(),
            "boolean" => v.is_boolean(),
            _ => false,
        });
        if !ok {
            errors.push(format!("{path}: expected {types:?}, got {v}"));
            return;
        }
    }
    if let Some(e) = schema.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            errors.push(format!("{path}: {v} not in {e:?}"));
        }
    }
    if let (Some(p), Some(s)) = (schema.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).unwrap().is_match(s) {
            errors.push(format!("{path}: {s:?} does not match {p}"));
        }
    }
    if let (Some(m), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < m {
            errors.push(format!("{path}: {x} < {m}"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for r in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(r.as_str().unwrap()) {
                errors.push(format!("{path}: missing {r}"));
            }
        }
        for (k, x) in obj {
            let child = format!("{path}/{k}");
            match (props.and_then(|p| p.get(k)), schema.get("additionalProperties")) {
                (Some(s), _) => validate(s, x, &child, errors),
                (None, Some(Value::Bool(false))) => errors.push(format!("{child}: not allowed")),
                (None, Some(s @ Value::Object(_))) => validate(s, x, &child, errors),
                _ => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(items, x, &format!("{path}/{i}"), errors);
        }
    }
}

fn errors(v: &Value) -> Vec<String> {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let mut errors = Vec::new();
    validate(&schema, v, "", &mut errors);
    errors
}

#[test]
fn pass_only_report_validates() {
    let filters = ["X*".to_string(), "Y1".to_string(), "H1".to_string()];
    let report = run_suite(Corpus::embedded(), Some(&filters), 2, Parallelism::Parallel).unwrap();
    assert!(report.checks.iter().all(|c| c.status.name() == "PASS"));
    for timings in [false, true] {
        let v: Value = serde_json::from_str(&report.to_json(timings)).unwrap();
        assert_eq!(errors(&v), Vec::<String>::new());
    }
}

#[test]
fn validator_rejects_malformed_reports() {
    let report = run_suite(Corpus::embedded(), Some(&["X2".to_string()]), 2, Parallelism::Sequential).unwrap();
    let good: Value = serde_json::from_str(&report.to_json(false)).unwrap();
    let mut bad = good.clone();
    bad["checks"][0]["status"] = "OK".into();
    bad["corpus_hash"] = "xyz".into();
    bad["extra"] = 1.into();
    bad["checks"][0].as_object_mut().unwrap().remove("reference");
    assert_eq!(errors(&bad).len(), 4, "{:?}", errors(&bad));
}
