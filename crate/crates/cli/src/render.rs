use serde_json::{Map, Value};

use crate::Format;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Renders a top-level document. CSV is one header row and one value row;
/// nested values are written as compact JSON.
pub fn render(doc: &Map<String, Value>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => {
            let header: Vec<String> = doc.keys().map(|k| csv_field(k)).collect();
            let row: Vec<String> = doc.values().map(|v| csv_field(&scalar(v))).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        Format::Text => doc
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", scalar(v)))
            .collect(),
    }
}
