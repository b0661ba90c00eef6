//! Check results and their JSON / markdown renderings.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Passes when `residual < threshold`.
    Zero,
    /// Passes when `residual > threshold`.
    Nonzero,
    /// Recorded, never asserted.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn zero(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Zero,
            residual,
            threshold,
            passed: residual < threshold,
            detail: None,
        }
    }

    pub fn nonzero(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Nonzero,
            residual,
            threshold,
            passed: residual > threshold,
            detail: None,
        }
    }

    pub fn unchecked(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Unchecked,
            residual: f64::NAN,
            threshold: f64::NAN,
            passed: true,
            detail: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(name: impl Into<String>, why: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Zero,
            residual: f64::INFINITY,
            threshold: 0.0,
            passed: false,
            detail: Some(why.into()),
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn verdict(&self) -> &'static str {
        match (self.kind, self.passed) {
            (CheckKind::Unchecked, _) => "UNCHECKED",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub extra: serde_json::Value,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report { command: command.into(), passed, checks, extra: serde_json::Value::Null }
    }

    pub fn with_extra(mut self, extra: serde_json::Value) -> Self {
        self.extra = extra;
        self
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n\n", self.command);
        s += &format!("Overall: **{}**\n\n", if self.passed { "PASS" } else { "FAIL" });
        s += "| check | kind | residual | threshold | verdict |\n|---|---|---|---|---|\n";
        for c in &self.checks {
            let kind = match c.kind {
                CheckKind::Zero => "zero",
                CheckKind::Nonzero => "nonzero",
                CheckKind::Unchecked => "unchecked",
            };
            s += &format!(
                "| {} | {} | {} | {} | {} |\n",
                c.name,
                kind,
                fmt_num(c.residual),
                fmt_num(c.threshold),
                c.verdict()
            );
        }
        s
    }
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "-".into()
    } else {
        format!("{v:.3e}")
    }
}
