//! Plain-text rendering of JSON reports.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Rows of objects sharing the keys of the first row.
fn grid(rows: &[Value]) -> Option<String> {
    let keys: Vec<&String> = rows.first()?.as_object()?.keys().collect();
    let mut lines = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for row in rows {
        let obj = row.as_object()?;
        lines.push(keys.iter().map(|k| obj.get(*k).map(cell).unwrap_or_default()).collect());
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in lines {
        let padded: Vec<String> = line.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    Some(out)
}

pub fn render(v: &Value) -> String {
    match v {
        Value::Array(rows) => grid(rows).unwrap_or_else(|| format!("{}\n", cell(v))),
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, val) in map {
                match val {
                    Value::Array(rows) if rows.first().is_some_and(Value::is_object) => {
                        out.push_str(&format!("{k}:\n"));
                        out.push_str(&grid(rows).unwrap_or_else(|| cell(val)));
                    }
                    Value::Object(_) => {
                        out.push_str(&format!("{k}:\n"));
                        for line in render(val).lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{k:<width$}  {}\n", cell(val))),
                }
            }
            out
        }
        other => format!("{}\n", cell(other)),
    }
}
