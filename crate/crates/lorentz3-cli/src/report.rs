//! Machine-readable verification reports: one record per check, sorted by
//! name, with a pass/fail summary. Reports are deterministic given the
//! configuration and seed; only the timestamp field varies between runs.

use serde::Serialize;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// the verified identity, in words
    pub claim: String,
    pub measured: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub status: Status,
}

impl Check {
    /// A defect check: passes when measured <= tolerance.
    pub fn defect(name: &str, claim: &str, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            claim: claim.to_string(),
            measured,
            tolerance,
            expected: None,
            status: if measured.is_finite() && measured <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    }

    /// An equality check: passes when |measured - expected| <= tolerance.
    pub fn equals(name: &str, claim: &str, measured: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            claim: claim.to_string(),
            measured,
            tolerance,
            expected: Some(expected),
            status: if measured.is_finite() && (measured - expected).abs() <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    }

    /// A boolean check, encoded as measured 1.0 (true) against expected 1.0.
    pub fn flag(name: &str, claim: &str, ok: bool) -> Self {
        Check::equals(name, claim, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub timestamp_unix: u64,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    /// command-specific payload (classification report, curvature table, ...)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(config: &RunConfig, mut checks: Vec<Check>, data: Option<serde_json::Value>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().filter(|c| c.status == Status::Pass).count();
        let fail = checks.len() - pass;
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config: config.clone(),
            checks,
            summary: Summary { pass, fail, total: pass + fail },
            data,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timestamp removed, for run-to-run comparison.
    pub fn to_comparable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timestamp_unix");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    /// Plain-text table, one line per check.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let expected = c
                .expected
                .map(|e| format!(" expected={e:.6e}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{status}  {name:<52} measured={m:.6e} tol={t:.1e}{expected}\n",
                name = c.name,
                m = c.measured,
                t = c.tolerance,
            ));
        }
        out.push_str(&format!(
            "{} checks: {} pass, {} fail\n",
            self.summary.total, self.summary.pass, self.summary.fail
        ));
        out
    }
}
