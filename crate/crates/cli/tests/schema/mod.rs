//! Checks a JSON value against the subset of JSON Schema used by
//! `docs/report.schema.json`: type, const, enum, required, properties,
//! additionalProperties, items, minItems, maxItems, minimum, anyOf and local
//! `$ref`. Any other keyword is an error, so the schema cannot silently drift
//! outside what is checked.

use serde_json::Value;

const KNOWN: &[&str] = &[
    "$schema", "$defs", "$ref", "title", "description", "type", "const", "enum", "required",
    "properties", "additionalProperties", "items", "minItems", "maxItems", "minimum", "anyOf",
];

pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    check(schema, schema, value, "$")
}

fn check(root: &Value, s: &Value, v: &Value, path: &str) -> Result<(), String> {
    let s = s.as_object().ok_or_else(|| format!("{path}: schema node is not an object"))?;
    if let Some(k) = s.keys().find(|k| !KNOWN.contains(&k.as_str())) {
        return Err(format!("{path}: unsupported schema keyword {k}"));
    }
    if let Some(r) = s.get("$ref") {
        let name = r
            .as_str()
            .and_then(|r| r.strip_prefix("#/$defs/"))
            .ok_or_else(|| format!("{path}: unsupported $ref {r}"))?;
        let target = &root["$defs"][name];
        if target.is_null() {
            return Err(format!("{path}: dangling $ref {name}"));
        }
        check(root, target, v, path)?;
    }
    if let Some(t) = s.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "integer" => v.is_i64() || v.is_u64(),
            "number" => v.is_number(),
            other => return Err(format!("{path}: unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {t}, got {v}"));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            return Err(format!("{path}: expected {c}, got {v}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{path}: {v} not in {e:?}"));
        }
    }
    if let Some(m) = s.get("minimum").and_then(Value::as_f64) {
        if v.as_f64().is_some_and(|x| x < m) {
            return Err(format!("{path}: {v} below {m}"));
        }
    }
    if let Some(alts) = s.get("anyOf").and_then(Value::as_array) {
        if !alts.iter().any(|a| check(root, a, v, path).is_ok()) {
            return Err(format!("{path}: no alternative matches {v}"));
        }
    }
    if let Some(obj) = v.as_object() {
        if let Some(req) = s.get("required").and_then(Value::as_array) {
            for r in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(r) {
                    return Err(format!("{path}: missing {r}"));
                }
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, x) in obj {
            let sub = format!("{path}.{k}");
            match (props.and_then(|p| p.get(k)), s.get("additionalProperties")) {
                (Some(ps), _) => check(root, ps, x, &sub)?,
                (None, Some(Value::Bool(false))) => return Err(format!("{sub}: not allowed")),
                (None, Some(extra @ Value::Object(_))) => check(root, extra, x, &sub)?,
                (None, _) => {}
            }
        }
    }
    if let Some(arr) = v.as_array() {
        if let Some(n) = s.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < n {
                return Err(format!("{path}: fewer than {n} items"));
            }
        }
        if let Some(n) = s.get("maxItems").and_then(Value::as_u64) {
            if arr.len() as u64 > n {
                return Err(format!("{path}: more than {n} items"));
            }
        }
        if let Some(items) = s.get("items") {
            for (k, x) in arr.iter().enumerate() {
                check(root, items, x, &format!("{path}[{k}]"))?;
            }
        }
    }
    Ok(())
}
