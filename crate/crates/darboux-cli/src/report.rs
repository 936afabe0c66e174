//! Run reports: a machine-readable JSON document per run plus one
//! human-readable line per check. Identical scenario and seed produce a
//! byte-identical document except for the trailing wall-clock field.

use serde::Serialize;

use darboux::theorems::TheoremReport;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub scenario: String,
    pub scenario_digest: String,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub passed: usize,
    pub failed: usize,
    pub wall_clock_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    /// Instance id, e.g. `normal-component[id/wave]`.
    pub id: String,
    pub kind: String,
    pub verdict: String,
    /// Classification outcome, when the check is a classifier.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub samples: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub tracks: Vec<TrackReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct TrackReport {
    pub name: String,
    pub max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub samples: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn from_theorem(instance: String, kind: &str, report: &TheoremReport) -> CheckReport {
        CheckReport {
            id: instance,
            kind: kind.to_string(),
            verdict: verdict_str(report.verdict.passed()),
            outcome: None,
            expected: None,
            samples: report.total_samples,
            skipped: report.skipped,
            max_residual: Some(report.max_residual),
            mean_residual: Some(report.mean_residual),
            tolerance: Some(report.tolerance),
            tracks: report
                .tracks
                .iter()
                .map(|t| TrackReport {
                    name: t.name.to_string(),
                    max: t.max,
                    tolerance: t.tolerance,
                    samples: t.samples,
                })
                .collect(),
            notes: report.notes.clone(),
        }
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let mut extra = String::new();
        if let Some(outcome) = &self.outcome {
            extra.push_str(&format!(" -> {outcome}"));
            if let Some(exp) = &self.expected {
                extra.push_str(&format!(" (expected {exp})"));
            }
        }
        if let (Some(max), Some(tol)) = (self.max_residual, self.tolerance) {
            extra.push_str(&format!(" max {max:.3e} tol {tol:.1e}"));
        }
        if self.skipped > 0 {
            extra.push_str(&format!(" skipped {}/{}", self.skipped, self.samples));
        }
        format!(
            "{} {}{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            extra
        )
    }
}

pub fn verdict_str(passed: bool) -> String {
    if passed { "pass" } else { "fail" }.to_string()
}

/// FNV-1a over the scenario text; stable digest for the report.
pub fn digest(text: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}
