//! Plain-text rendering of reports. The text form carries exactly the
//! fields of the JSON form: any `Serialize` value is rendered from its JSON
//! tree as indented `key: value` lines.

use serde::Serialize;
use serde_json::Value;

pub fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

pub fn to_text(value: &impl Serialize) -> String {
    let tree = serde_json::to_value(value).expect("reports serialize");
    let mut out = String::new();
    match &tree {
        Value::Object(_) | Value::Array(_) => render(&tree, 0, &mut out),
        scalar => {
            out.push_str(&scalar_text(scalar));
            out.push('\n');
        }
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        Value::Object(m) if m.is_empty() => "{}".to_string(),
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            format!("[{}]", items.join(", "))
        }
        other => other.to_string(),
    }
}

/// Arrays of scalars, and arrays of those, print inline as `[a, b]`.
fn is_nested(v: &Value) -> bool {
    match v {
        Value::Object(m) => !m.is_empty(),
        Value::Array(a) => a.iter().any(|x| matches!(x, Value::Object(_)) || (x.is_array() && is_nested(x))),
        _ => false,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                if is_nested(val) {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render(val, indent + 2, out);
                } else {
                    out.push_str(&format!("{pad}{key}: {}\n", scalar_text(val)));
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_nested(item) {
                    let mut inner = String::new();
                    render(item, indent + 2, &mut inner);
                    // first line of the item shares the dash
                    let body = inner.trim_start_matches(' ');
                    out.push_str(&format!("{pad}- {body}"));
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(item)));
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{}\n", scalar_text(scalar))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested_values() {
        let v = json!({
            "sum": "3/2",
            "holds": true,
            "witness": null,
            "per_edge": [{"u": 0, "v": 1}, {"u": 1, "v": 2}],
            "ranks": [],
            "edges": [[0, 1], [1, 2]],
        });
        let text = to_text(&v);
        assert_eq!(
            text,
            "edges: [[0, 1], [1, 2]]\nholds: true\nper_edge:\n  - u: 0\n    v: 1\n  - u: 1\n    v: 2\nranks: []\nsum: 3/2\nwitness: none\n"
        );
    }
}
