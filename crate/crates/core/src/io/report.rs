//! Machine-readable run reports with a markdown rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// Outcome of one named check; `details` carries the coefficient diffs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
}

/// Fields that legitimately differ between identical runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub timings_ms: BTreeMap<String, u64>,
    /// `hit`, `miss` or `disabled` for cached computations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: Vec<InputHash>,
    pub checks: Vec<CheckVerdict>,
    pub results: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub runtime: Runtime,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_vec(),
            seed: None,
            inputs: Vec::new(),
            checks: Vec::new(),
            results: BTreeMap::new(),
            notes: Vec::new(),
            runtime: Runtime::default(),
        }
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputHash {
            path: path.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn check(&mut self, name: &str, passed: bool, summary: impl Into<String>, details: impl Serialize) {
        self.checks.push(CheckVerdict {
            name: name.to_string(),
            passed,
            summary: summary.into(),
            details: serde_json::to_value(details).unwrap_or(Value::Null),
        });
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn time(&mut self, key: &str, start: std::time::Instant) {
        self.runtime
            .timings_ms
            .insert(key.to_string(), start.elapsed().as_millis() as u64);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the runtime section removed; equal for identical runs.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.runtime = Runtime::default();
        r.to_json()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {} {}\n", self.tool, self.command.join(" "));
        let _ = writeln!(s, "- version: {}", self.version);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "- seed: {seed}");
        }
        for i in &self.inputs {
            let _ = writeln!(s, "- input `{}` sha256 `{}`", i.path, i.sha256);
        }
        if let Some(c) = &self.runtime.cache {
            let _ = writeln!(s, "- cache: {c}");
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n| check | verdict | summary |\n|---|---|---|");
            for c in &self.checks {
                let v = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(s, "| {} | {v} | {} |", c.name, c.summary.replace('|', "\\|"));
            }
        }
        if !self.results.is_empty() {
            let _ = writeln!(s, "\n## Results\n");
            for (k, v) in &self.results {
                let text = match v {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(s, "- {k}: {text}");
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "\n## Notes\n");
            for n in &self.notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        s
    }
}
