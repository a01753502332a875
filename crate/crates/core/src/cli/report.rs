//! Rendering of command reports.

use serde_json::Value;

pub(super) fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Flattens the report into `key  value` lines. Arrays of objects that share
/// their keys become a column table.
pub(super) fn to_table(v: &Value) -> String {
    let mut lines = Vec::new();
    walk(v, "", &mut lines);
    let width = lines.iter().filter_map(|l| l.0.as_ref().map(|k| k.len())).max().unwrap_or(0);
    let mut s = String::new();
    for (key, value) in lines {
        match key {
            Some(k) => s.push_str(&format!("{k:<width$}  {value}\n")),
            None => {
                s.push_str(&value);
                s.push('\n');
            }
        }
    }
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn walk(v: &Value, prefix: &str, lines: &mut Vec<(Option<String>, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                walk(child, &join(prefix, k), lines);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            lines.push((Some(prefix.to_string()), joined.join(", ")));
        }
        Value::Array(items) => {
            if let Some(header) = common_keys(items) {
                lines.push((None, format!("{prefix}:")));
                lines.push((None, header.join("\t")));
                for item in items {
                    let row: Vec<String> = header.iter().map(|h| scalar(&item[h.as_str()])).collect();
                    lines.push((None, row.join("\t")));
                }
            } else {
                for (i, item) in items.iter().enumerate() {
                    walk(item, &format!("{prefix}[{i}]"), lines);
                }
            }
        }
        other => lines.push((Some(prefix.to_string()), scalar(other))),
    }
}

/// Keys shared by every element when all elements are flat objects.
fn common_keys(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let flat = items.iter().all(|i| {
        i.as_object().is_some_and(|o| o.len() == keys.len() && o.iter().all(|(k, v)| keys.contains(k) && !v.is_object() && !v.is_array()))
    });
    flat.then_some(keys)
}
