//! Versioned report envelope shared by every command, with a plain-text
//! renderer.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "grex/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub ok: bool,
    pub result: Value,
}

impl Report {
    pub fn new<T: Serialize>(command: &str, ok: bool, result: &T) -> Self {
        Report { schema: SCHEMA.into(), command: command.into(), ok, result: serde_json::to_value(result).unwrap_or(Value::Null) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}] {}\n", self.command, self.schema, if self.ok { "ok" } else { "FAILED" });
        render(&self.result, 1, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array() || is_flat_array(x)) => {
            Some(format!("[{}]", xs.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn envelope_and_text() {
        let r = Report::new("kl", true, &json!({ "poly": [[0, 1], [1, 1]], "group": "A3" }));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let text = r.to_text();
        assert!(text.starts_with("kl [grex/1] ok"));
        assert!(text.contains("group: A3"));
        assert!(text.contains("poly: [[0, 1], [1, 1]]"));
    }
}
