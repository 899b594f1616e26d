//! Verification reports: one record per requested check, summary counts and
//! the exit code derived from them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Error,
    Informational,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::Error => "error",
            Status::Informational => "informational",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub kind: String,
    pub status: Status,
    pub summary: String,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub error: usize,
    pub informational: usize,
}

impl Summary {
    pub fn from_checks(checks: &[CheckRecord]) -> Self {
        let mut s = Summary {
            total: checks.len(),
            ..Default::default()
        };
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::NotApplicable => s.not_applicable += 1,
                Status::Error => s.error += 1,
                Status::Informational => s.informational += 1,
            }
        }
        s
    }
}

/// Run settings recorded alongside the results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub tolerance_scale: f64,
    pub exhaustive_relatedness: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub engine_version: String,
    pub settings: RunSettings,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(
        scenario: String,
        settings: RunSettings,
        tolerances: Tolerances,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let summary = Summary::from_checks(&checks);
        Self {
            scenario,
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            settings,
            tolerances,
            checks,
            summary,
        }
    }

    /// 0 when nothing failed or errored, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail + self.summary.error == 0 {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        for c in &self.checks {
            let _ = write!(
                out,
                "[{:<14}] {} ({}): {}",
                c.status.as_str(),
                c.name,
                c.kind,
                c.summary
            );
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, " [{ms:.1} ms]");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "total {}: {} pass, {} fail, {} not-applicable, {} error, {} informational",
            s.total, s.pass, s.fail, s.not_applicable, s.error, s.informational
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(status: Status) -> CheckRecord {
        CheckRecord {
            name: status.as_str().into(),
            kind: "k".into(),
            status,
            summary: String::new(),
            details: Value::Null,
            elapsed_ms: None,
        }
    }

    fn report(statuses: &[Status]) -> VerificationReport {
        VerificationReport::new(
            "t".into(),
            RunSettings {
                tolerance_scale: 1.0,
                exhaustive_relatedness: false,
                max_n: None,
            },
            Tolerances::default(),
            statuses.iter().map(|&s| record(s)).collect(),
        )
    }

    #[test]
    fn exit_code_follows_statuses() {
        assert_eq!(
            report(&[Status::Pass, Status::NotApplicable, Status::Informational]).exit_code(),
            0
        );
        assert_eq!(report(&[Status::Pass, Status::Fail]).exit_code(), 1);
        assert_eq!(report(&[Status::Error]).exit_code(), 1);
    }

    #[test]
    fn json_round_trip() {
        let r = report(&[Status::Pass, Status::Fail]);
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"not_applicable\": 0"));
        assert!(!r.to_json().contains("elapsed_ms"));
    }
}
