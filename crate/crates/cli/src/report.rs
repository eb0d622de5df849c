//! The report envelope and its two renderings. The JSON form is the payload
//! itself; the text form is a deterministic walk of the same payload, so the
//! two views never diverge.

use serde_json::Value;

pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Value,
    pub stats: Value,
}

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs.iter().map(|(name, sha256)| {
                serde_json::json!({"name": name, "sha256": sha256})
            }).collect::<Vec<_>>(),
            "results": self.results,
            "stats": self.stats,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("version: {}\n", env!("CARGO_PKG_VERSION")));
        for (name, sha) in &self.inputs {
            out.push_str(&format!("input: {name}\n  sha256: {sha}\n"));
        }
        render_value(&self.results, 0, &mut out);
        if self
            .stats
            .as_object()
            .map(|o| !o.is_empty())
            .unwrap_or(false)
        {
            out.push_str("stats:\n");
            render_value(&self.stats, 2, &mut out);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if let Some(s) = scalar(val) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                    continue;
                }
                if val.as_array().map(|a| a.is_empty()).unwrap_or(false)
                    || val.as_object().map(|o| o.is_empty()).unwrap_or(false)
                {
                    out.push_str(&format!("{pad}{k}: (empty)\n"));
                    continue;
                }
                if let Value::Array(items) = val {
                    let flat: Vec<String> = items.iter().filter_map(scalar).collect();
                    if flat.len() == items.len() {
                        out.push_str(&format!("{pad}{k}: [{}]\n", flat.join(", ")));
                        continue;
                    }
                }
                out.push_str(&format!("{pad}{k}:\n"));
                render_value(val, indent + 2, out);
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        if let Value::Array(inner) = item {
                            let joined: Vec<String> = inner.iter().filter_map(scalar).collect();
                            if joined.len() == inner.len() {
                                out.push_str(&format!("{pad}- [{}]\n", joined.join(", ")));
                                continue;
                            }
                        }
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 2, out);
                    }
                }
            }
        }
        _ => {
            out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default()));
        }
    }
}
