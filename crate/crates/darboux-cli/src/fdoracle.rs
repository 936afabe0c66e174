//! The finite-difference verification pass over a scenario: recompute the
//! metric data and curvatures for every curve by central differences and
//! report the worst deviation from the jet pipeline, per step.

use serde::Serialize;

use darboux::fdcheck;

use crate::report::{digest, REPORT_SCHEMA_VERSION};
use crate::runner::{RunError, RunOptions, Runner};
use crate::scenario::{ConfigError, Scenario};

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub scenario: String,
    pub scenario_digest: String,
    pub rows: Vec<OracleRow>,
    /// Set when a step sweep stopped improving by at least 4x per decade.
    pub plateau: bool,
    /// Set when shrinking the step made the deviation worse (step below
    /// the roundoff noise floor).
    pub noise_floor: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct OracleRow {
    pub step: f64,
    pub worst: f64,
    pub worst_quantity: String,
    pub per_curve: Vec<CurveDeviation>,
}

#[derive(Debug, Serialize)]
pub struct CurveDeviation {
    pub curve: String,
    pub worst: f64,
    pub worst_quantity: String,
}

pub fn run_oracle(scenario: &Scenario, steps: &[f64]) -> Result<OracleReport, RunError> {
    for step in steps {
        if !(1e-7..=1e-3).contains(step) {
            return Err(RunError::Config(ConfigError::Invalid {
                path: "--fd-step".into(),
                message: format!("step {step} outside [1e-7, 1e-3]"),
            }));
        }
    }
    let mut runner = Runner::new(scenario, RunOptions::default());
    let curve_names: Vec<String> = scenario.curves.keys().cloned().collect();
    if curve_names.is_empty() {
        return Err(RunError::Config(ConfigError::Invalid {
            path: "curves".into(),
            message: "the scenario defines no curves to verify".into(),
        }));
    }
    let mut rows = Vec::with_capacity(steps.len());
    // Largest step first so the sweep reads as a convergence study.
    let mut ordered: Vec<f64> = steps.to_vec();
    ordered.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ordered.dedup();
    for &step in &ordered {
        let mut per_curve = Vec::new();
        let mut worst = 0.0_f64;
        let mut worst_quantity = String::new();
        for name in &curve_names {
            let samples = runner.curve_samples(name)?;
            let c = &scenario.curves[name];
            let patch = &scenario.surfaces[&c.surface];
            let fd = fdcheck::compare(patch, &c.curve, &samples, step).map_err(|source| {
                RunError::Geom {
                    context: format!("curve `{name}`"),
                    source,
                }
            })?;
            if fd.worst > worst {
                worst = fd.worst;
                worst_quantity = fd.worst_quantity.to_string();
            }
            per_curve.push(CurveDeviation {
                curve: name.clone(),
                worst: fd.worst,
                worst_quantity: fd.worst_quantity.to_string(),
            });
        }
        rows.push(OracleRow {
            step,
            worst,
            worst_quantity,
            per_curve,
        });
    }
    let mut plateau = false;
    let mut noise_floor = false;
    let mut notes = Vec::new();
    for pair in rows.windows(2) {
        let (coarse, fine) = (&pair[0], &pair[1]);
        // Second-order differences should improve by (step ratio)^2; call
        // it a plateau when less than a tenth of that materializes.
        let expected_gain = (coarse.step / fine.step).powi(2);
        if fine.worst > 2.0 * coarse.worst {
            noise_floor = true;
            notes.push(format!(
                "step {:.1e} is too small: deviation {:.3e} is not monotone against {:.3e} at {:.1e}",
                fine.step, fine.worst, coarse.worst, coarse.step
            ));
        } else if fine.worst * (expected_gain / 10.0) > coarse.worst {
            plateau = true;
            notes.push(format!(
                "deviation plateaus between steps {:.1e} and {:.1e}",
                coarse.step, fine.step
            ));
        }
    }
    Ok(OracleReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: scenario.name.clone(),
        scenario_digest: digest(&scenario.text),
        rows,
        plateau,
        noise_floor,
        notes,
    })
}
