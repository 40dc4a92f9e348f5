use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "ebh-report/1";

/// Wraps a report body with the command name and schema version.
pub fn envelope(command: &str, report: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    m.insert("report".into(), report);
    m.insert("schema_version".into(), Value::String(SCHEMA_VERSION.into()));
    Value::Object(m)
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            Value::Object(keys.into_iter().map(|k| (k.clone(), sorted(&m[k]))).collect())
        }
        Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

/// Pretty-printed JSON with keys sorted at every level and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("JSON values serialize");
    s.push('\n');
    s
}
