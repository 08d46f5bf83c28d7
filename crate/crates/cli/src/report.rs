//! Deterministic reports: JSON with sorted keys, or an indented text view.

use std::collections::BTreeMap;

use nilorbit::{Error, Rational};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything that went into a run, recorded as it is read.
#[derive(Default)]
pub struct Inputs {
    sources: BTreeMap<String, String>,
    contents: BTreeMap<String, String>,
}

impl Inputs {
    /// A file input: `source` is shown, `content` is digested.
    pub fn file(&mut self, label: &str, source: &str, content: &str) {
        self.sources.insert(label.to_string(), source.to_string());
        self.contents.insert(label.to_string(), content.to_string());
    }

    /// An inline value (catalog reference, CSV functional, ...).
    pub fn value(&mut self, label: &str, value: &str) {
        self.file(label, value, value);
    }

    fn to_json(&self) -> Value {
        let mut hasher = Sha256::new();
        for (label, content) in &self.contents {
            hasher.update(label.as_bytes());
            hasher.update([0]);
            hasher.update(content.as_bytes());
            hasher.update([0]);
        }
        json!({
            "sources": self.sources,
            "digest": format!("sha256:{:x}", hasher.finalize()),
        })
    }
}

/// A single named pass/fail check.
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

pub struct Report {
    pub command: Value,
    pub inputs: Inputs,
    pub seed: Option<u64>,
    pub results: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: Value) -> Self {
        Self {
            command,
            inputs: Inputs::default(),
            seed: None,
            results: Map::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    fn provenance(&self) -> Value {
        json!({
            "tool": "nilorbit",
            "version": env!("CARGO_PKG_VERSION"),
            "library_version": nilorbit::VERSION,
            "seed": self.seed,
        })
    }

    fn verdicts_json(&self) -> Value {
        Value::Array(
            self.verdicts
                .iter()
                .map(|v| {
                    let mut m = Map::new();
                    m.insert("check".into(), json!(v.name));
                    m.insert("passed".into(), json!(v.passed));
                    if let Some(d) = &v.detail {
                        m.insert("detail".into(), json!(d));
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs.to_json(),
            "results": self.results,
            "verdicts": self.verdicts_json(),
            "provenance": self.provenance(),
        })
    }

    pub fn error_json(&self, error: &Error, exit_code: i32) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs.to_json(),
            "error": {"kind": error.kind(), "message": error.to_string()},
            "exit_code": exit_code,
            "provenance": self.provenance(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_map(&self.results, 0, &mut out);
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            match &v.detail {
                Some(d) => out.push_str(&format!("{mark} {} ({d})\n", v.name)),
                None => out.push_str(&format!("{mark} {}\n", v.name)),
            }
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out
    }
}

fn is_scalar(value: &Value) -> bool {
    !value.is_array() && !value.is_object()
}

/// One-line rendering for scalars, flat arrays and arrays of flat arrays.
fn inline(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items)
            if items
                .iter()
                .all(|v| is_scalar(v) || v.as_array().is_some_and(|a| a.iter().all(is_scalar))) =>
        {
            let parts: Vec<String> = items.iter().filter_map(inline).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render_map(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (key, value) in map {
        match inline(value) {
            Some(text) => out.push_str(&format!("{pad}{key}: {text}\n")),
            None => {
                out.push_str(&format!("{pad}{key}:\n"));
                render_value(value, depth + 1, out);
            }
        }
    }
}

fn render_value(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(m) => render_map(m, depth, out),
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(text) => out.push_str(&format!("{pad}- {text}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

pub fn q(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn qss(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| qs(r)).collect())
}
