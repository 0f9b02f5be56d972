//! Run reports: one JSON document per run, with a human rendering derived from it.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::ConfigSnapshot;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Unchecked,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Unchecked => "unchecked",
        }
    }
}

/// What an operation computed: identities that must hold, and recorded values.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub checks: BTreeMap<String, bool>,
    pub values: BTreeMap<String, Value>,
    /// Checks that could not be decided within the caps.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unchecked: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, key: impl Into<String>, ok: bool) -> &mut Outcome {
        self.checks.insert(key.into(), ok);
        self
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl Serialize) -> &mut Outcome {
        self.values.insert(key.into(), serde_json::to_value(v).expect("report values serialize"));
        self
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        self.checks.get(key).copied().or_else(|| self.values.get(key).and_then(Value::as_bool))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub name: String,
    pub op: String,
    pub args: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expectation_failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub parameters: BTreeMap<String, Value>,
    pub config: ConfigSnapshot,
    pub status: Status,
    pub steps: Vec<StepReport>,
    /// Wall-clock seconds per step, only with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn step(&self, name: &str) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_machine(text: &str, source_name: &str) -> Result<Report, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::parse(source_name, format!("line {}: {e}", e.line())))
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}: {}", self.scenario, self.status.as_str().to_uppercase());
        if !self.parameters.is_empty() {
            let _ = writeln!(out, "parameters: {}", inline_map(&self.parameters));
        }
        let cfg = serde_json::to_value(&self.config).expect("config serializes");
        if let Value::Object(map) = cfg {
            let _ = writeln!(out, "config: {}", inline_map(&map.into_iter().collect()));
        }
        for (i, step) in self.steps.iter().enumerate() {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{}/{}] {} ({}): {}", i + 1, self.steps.len(), step.name, step.op, step.status.as_str().to_uppercase());
            if !step.args.is_empty() {
                let _ = writeln!(out, "  args: {}", inline_map(&step.args));
            }
            if let Some(err) = &step.error {
                let _ = writeln!(out, "  error: {err}");
            }
            for (k, ok) in &step.outcome.checks {
                let _ = writeln!(out, "  {} {k}", if *ok { "ok  " } else { "FAIL" });
            }
            for k in &step.outcome.unchecked {
                let _ = writeln!(out, "  ??   {k} (unchecked)");
            }
            for (k, v) in &step.outcome.values {
                let _ = writeln!(out, "  {k} = {}", render_value(v));
            }
            for f in &step.expectation_failures {
                let _ = writeln!(out, "  expectation failed: {f}");
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out);
            for (k, secs) in t {
                let _ = writeln!(out, "time {k}: {secs:.3}s");
            }
        }
        out
    }
}

fn inline_map(m: &BTreeMap<String, Value>) -> String {
    m.iter().map(|(k, v)| format!("{k}={}", render_value(v))).collect::<Vec<_>>().join(" ")
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
