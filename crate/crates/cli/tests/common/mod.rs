//! Test support: a structural validator for the subset of JSON Schema the
//! shipped schemas use (draft-07: type, enum, required, properties,
//! additionalProperties:false, items, minItems/maxItems, numeric bounds,
//! $ref into #/definitions).

use serde_json::Value;

pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    let mut errors = Vec::new();
    check(schema, schema, value, "$", &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let mut node = root;
    for part in reference.trim_start_matches("#/").split('/') {
        node = node.get(part).unwrap_or(&Value::Null);
    }
    node
}

fn type_matches(type_name: &str, value: &Value) -> bool {
    match type_name {
        "null" => value.is_null(),
        "boolean" => value.is_boolean(),
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.as_f64().map(|v| v.fract() == 0.0).unwrap_or(false),
        _ => false,
    }
}

fn check(root: &Value, schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        check(root, resolve(root, reference), value, path, errors);
        return;
    }
    if let Some(expected) = schema.get("type") {
        let names: Vec<&str> = match expected {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        if !names.iter().any(|n| type_matches(n, value)) {
            errors.push(format!("{path}: expected type {names:?}"));
            return;
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            errors.push(format!("{path}: not in enum"));
        }
    }
    if let Some(v) = value.as_f64() {
        if let Some(m) = schema.get("minimum").and_then(Value::as_f64) {
            if v < m {
                errors.push(format!("{path}: {v} below minimum {m}"));
            }
        }
        if let Some(m) = schema.get("maximum").and_then(Value::as_f64) {
            if v > m {
                errors.push(format!("{path}: {v} above maximum {m}"));
            }
        }
        if let Some(m) = schema.get("exclusiveMinimum").and_then(Value::as_f64) {
            if v <= m {
                errors.push(format!("{path}: {v} not above {m}"));
            }
        }
    }
    if let Some(object) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(key) {
                    errors.push(format!("{path}: missing required key '{key}'"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        if let Some(properties) = properties {
            for (key, sub) in properties {
                if let Some(v) = object.get(key) {
                    check(root, sub, v, &format!("{path}.{key}"), errors);
                }
            }
        }
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in object.keys() {
                let known = properties.map(|p| p.contains_key(key)).unwrap_or(false);
                if !known {
                    errors.push(format!("{path}: unexpected key '{key}'"));
                }
            }
        }
    }
    if let Some(array) = value.as_array() {
        if let Some(m) = schema.get("minItems").and_then(Value::as_u64) {
            if (array.len() as u64) < m {
                errors.push(format!("{path}: fewer than {m} items"));
            }
        }
        if let Some(m) = schema.get("maxItems").and_then(Value::as_u64) {
            if (array.len() as u64) > m {
                errors.push(format!("{path}: more than {m} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            for (i, item) in array.iter().enumerate() {
                check(root, items, item, &format!("{path}[{i}]"), errors);
            }
        }
    }
}

pub fn load_schema(name: &str) -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/");
    let text = std::fs::read_to_string(format!("{path}{name}")).expect("schema file");
    serde_json::from_str(&text).expect("schema parses")
}
