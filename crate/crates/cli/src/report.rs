//! Machine- and human-readable command output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const TOOL_VERSION: &str = concat!("lefschetz ", env!("CARGO_PKG_VERSION"));

/// One command invocation: what was asked, what came out, and for every
/// numeric result field the formula that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub input: Value,
    pub result: Map<String, Value>,
    pub provenance: BTreeMap<String, String>,
    /// Names of failed self-checks; empty when everything agreed.
    pub failed_checks: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Self {
            command: command.to_owned(),
            version: TOOL_VERSION.to_owned(),
            input,
            result: Map::new(),
            provenance: BTreeMap::new(),
            failed_checks: Vec::new(),
        }
    }

    /// A non-numeric result field.
    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.result.insert(key.to_owned(), value.into());
        self
    }

    /// A numeric result field with the formula that produced it.
    pub fn num(&mut self, key: &str, value: impl Into<Value>, provenance: &str) -> &mut Self {
        self.provenance.insert(key.to_owned(), provenance.to_owned());
        self.put(key, value)
    }

    pub fn check(&mut self, name: &str, passed: bool) -> &mut Self {
        if !passed {
            self.failed_checks.push(name.to_owned());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failed_checks.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.command, self.version);
        let width = self.result.keys().map(String::len).max().unwrap_or(0);
        for (key, value) in &self.result {
            let shown = match value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "  {key:<width$}  {shown}");
            if let Some(p) = self.provenance.get(key) {
                let _ = writeln!(out, "  {:<width$}    via {p}", "");
            }
        }
        if !self.failed_checks.is_empty() {
            let _ = writeln!(out, "  FAILED CHECKS: {}", self.failed_checks.join(", "));
        }
        out
    }
}
