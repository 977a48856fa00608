use serde_json::Value;

/// Plain-text rendering of a JSON report. Every key and value of the JSON
/// form appears; matrices are printed as aligned rows.
pub fn render_text(report: &Value) -> String {
    let mut out = Vec::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            entry(&mut out, 0, k, v);
        }
    }
    out.join("\n")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn entry(out: &mut Vec<String>, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            out.push(format!("{pad}{key}:"));
            for (k, v) in map {
                entry(out, indent + 2, k, v);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let joined: Vec<_> = items.iter().map(scalar).collect();
            out.push(format!("{pad}{key}: [{}]", joined.join(", ")));
        }
        Value::Array(items) if items.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(is_scalar))) => {
            out.push(format!("{pad}{key}:"));
            let cells: Vec<Vec<String>> = items
                .iter()
                .map(|r| r.as_array().unwrap().iter().map(scalar).collect())
                .collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in cells {
                let row: Vec<_> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push(format!("{pad}  [{}]", row.join(" ")));
            }
        }
        Value::Array(items) => {
            out.push(format!("{pad}{key}:"));
            for (i, item) in items.iter().enumerate() {
                entry(out, indent + 2, &format!("[{}]", i + 1), item);
            }
        }
        _ => out.push(format!("{pad}{key}: {}", scalar(v))),
    }
}
