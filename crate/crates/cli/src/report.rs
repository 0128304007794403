//! Machine-readable run reports.
//!
//! Reports are JSON values with a fixed shape: `command`, `parameters`,
//! `results`, `summary` and `provenance`. Everything outside `provenance`
//! is byte-identical across runs with the same arguments (JSON maps are
//! serialized with sorted keys), which makes the reports usable as golden
//! files in CI.

use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

pub struct RunReport {
    pub command: &'static str,
    pub parameters: Value,
    pub results: Value,
    pub pass: bool,
    pub notes: Vec<String>,
    /// Wall-clock measurements; kept inside the provenance block because
    /// they vary between runs.
    pub timing: Value,
}

impl RunReport {
    pub fn to_value(&self) -> Value {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "summary": {
                "pass": self.pass,
                "notes": self.notes,
            },
            "provenance": {
                "tool": "ekr",
                "version": env!("CARGO_PKG_VERSION"),
                "timestamp_unix": timestamp,
                "timing": self.timing,
            },
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        render_value("parameters", &self.parameters, 0, &mut out);
        render_value("results", &self.results, 0, &mut out);
        out.push_str(&format!(
            "result: {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

fn render_value(key: &str, value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render_value(k, v, indent + 1, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !v.is_object() && !v.is_array()) {
                let flat: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{pad}{key}: [{}]\n", flat.join(", ")));
            } else {
                out.push_str(&format!("{pad}{key}: ({} entries)\n", items.len()));
                for (i, v) in items.iter().enumerate() {
                    render_value(&format!("[{i}]"), v, indent + 1, out);
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{key}: {}\n", render_scalar(scalar))),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
