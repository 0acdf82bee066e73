use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certificate::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Infeasible,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: Value) -> Self {
        Check { name: name.into(), status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail }
    }

    pub fn infeasible(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check { name: name.into(), status: CheckStatus::Infeasible, detail: Value::String(reason.into()) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    F32003,
    Rational,
}

/// Everything that determines a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: String,
    pub field: FieldChoice,
    pub bound: Option<i32>,
    pub i_max: Option<usize>,
    pub engine: Option<String>,
    pub step_cap: Option<u64>,
    pub time_limit_s: Option<u64>,
    pub format: Option<String>,
    pub out: String,
    pub seed: u64,
    pub workers: Option<usize>,
    /// Command-specific arguments.
    pub args: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: JobConfig,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default)]
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn new(config: JobConfig) -> Self {
        Report {
            tool: "sdmkit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            checks: Vec::new(),
            certificates: Vec::new(),
            payload: Value::Null,
            error: None,
            wall_time_ms: 0,
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let s = serde_json::to_string_pretty(self).expect("report serializes");
        std::fs::write(path, s + "\n")
    }

    pub fn read(path: &Path) -> std::io::Result<Self> {
        let s = std::fs::read_to_string(path)?;
        serde_json::from_str(&s).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    pub fn summary(&self) -> String {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "{}: {} pass, {} fail, {} infeasible",
            self.config.command,
            count(CheckStatus::Pass),
            count(CheckStatus::Fail),
            count(CheckStatus::Infeasible)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let c = JobConfig {
            command: "ext".into(),
            field: FieldChoice::F32003,
            bound: Some(6),
            i_max: Some(3),
            engine: Some("syzygy".into()),
            step_cap: None,
            time_limit_s: Some(10),
            format: None,
            out: "r.json".into(),
            seed: 7,
            workers: Some(2),
            args: serde_json::json!({"n": 2}),
        };
        let s = serde_json::to_string(&c).unwrap();
        let back: JobConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn infeasible_is_not_failure() {
        let mut r = Report::new(JobConfig {
            command: "x".into(),
            field: FieldChoice::Rational,
            bound: None,
            i_max: None,
            engine: None,
            step_cap: None,
            time_limit_s: None,
            format: None,
            out: "x.json".into(),
            seed: 0,
            workers: None,
            args: Value::Null,
        });
        r.check(Check::infeasible("a", "cap"));
        assert!(!r.failed());
        r.check(Check::new("b", false, Value::Null));
        assert!(r.failed());
    }
}
