//! Execute a scenario's checks against the core library.

use std::collections::BTreeMap;
use std::rc::Rc;
use std::time::Instant;

use darboux::geom::{self, FrameSample, GeomError};
use darboux::rectify::{
    classify_darboux_rectifying, decompose_position, PositionDecomposition, RectifyingVerdict,
};
use darboux::surfmap::{
    classify_map, conformal_partial_check, pushforward_curve, MapClassification, MapKind,
    PushforwardCurve, PARTIAL_IDENTITY_NAMES,
};
use darboux::theorems::{self, CheckContext};
use darboux::tol;

use crate::report::{
    digest, verdict_str, CheckReport, RunReport, TrackReport, REPORT_SCHEMA_VERSION,
};
use crate::scenario::{CheckKind, CheckSpec, ConfigError, Scenario};

/// Flag-level overrides for a run.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Replaces the default headline tolerance of every check that does
    /// not set its own.
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

/// Anything that prevents a scenario from being executed (exit code 2),
/// as opposed to a failed verdict (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{context}: {source}")]
    Geom {
        context: String,
        #[source]
        source: GeomError,
    },
}

fn geom_err(context: impl Into<String>) -> impl FnOnce(GeomError) -> RunError {
    move |source| RunError::Geom {
        context: context.into(),
        source,
    }
}

fn config(path: impl Into<String>, message: impl Into<String>) -> RunError {
    RunError::Config(ConfigError::Invalid {
        path: path.into(),
        message: message.into(),
    })
}

const DEFAULT_GRID: (usize, usize) = (9, 9);

pub struct Runner<'a> {
    scenario: &'a Scenario,
    options: RunOptions,
    seed: u64,
    samples: BTreeMap<String, Rc<Vec<FrameSample>>>,
    decompositions: BTreeMap<String, Rc<PositionDecomposition>>,
    pushforwards: BTreeMap<(String, String), Rc<PushforwardCurve>>,
    classifications: BTreeMap<String, Rc<MapClassification>>,
}

impl<'a> Runner<'a> {
    pub fn new(scenario: &'a Scenario, options: RunOptions) -> Runner<'a> {
        Runner {
            scenario,
            options,
            seed: options.seed.unwrap_or(scenario.seed),
            samples: BTreeMap::new(),
            decompositions: BTreeMap::new(),
            pushforwards: BTreeMap::new(),
            classifications: BTreeMap::new(),
        }
    }

    pub fn curve_samples(&mut self, curve: &str) -> Result<Rc<Vec<FrameSample>>, RunError> {
        if let Some(s) = self.samples.get(curve) {
            return Ok(s.clone());
        }
        let c = &self.scenario.curves[curve];
        let patch = &self.scenario.surfaces[&c.surface];
        let samples = geom::sample_curve(patch, &c.curve, c.samples)
            .map_err(geom_err(format!("curve `{curve}`")))?;
        let rc = Rc::new(samples);
        self.samples.insert(curve.to_string(), rc.clone());
        Ok(rc)
    }

    pub fn decomposition(&mut self, curve: &str) -> Result<Rc<PositionDecomposition>, RunError> {
        if let Some(d) = self.decompositions.get(curve) {
            return Ok(d.clone());
        }
        let samples = self.curve_samples(curve)?;
        let rc = Rc::new(decompose_position(&samples));
        self.decompositions.insert(curve.to_string(), rc.clone());
        Ok(rc)
    }

    pub fn pushforward(
        &mut self,
        map: &str,
        curve: &str,
    ) -> Result<Rc<PushforwardCurve>, RunError> {
        let key = (map.to_string(), curve.to_string());
        if let Some(p) = self.pushforwards.get(&key) {
            return Ok(p.clone());
        }
        let m = &self.scenario.maps[map];
        let c = &self.scenario.curves[curve];
        let push = pushforward_curve(&m.correspondence, &c.curve, c.samples)
            .map_err(geom_err(format!("map `{map}` with curve `{curve}`")))?;
        let rc = Rc::new(push);
        self.pushforwards.insert(key, rc.clone());
        Ok(rc)
    }

    pub fn classification(&mut self, map: &str) -> Result<Rc<MapClassification>, RunError> {
        if let Some(c) = self.classifications.get(map) {
            return Ok(c.clone());
        }
        let m = &self.scenario.maps[map];
        let class = classify_map(&m.correspondence, DEFAULT_GRID, None)
            .map_err(geom_err(format!("map `{map}`")))?;
        let rc = Rc::new(class);
        self.classifications.insert(map.to_string(), rc.clone());
        Ok(rc)
    }

    fn context(&self, index: usize, check: &CheckSpec) -> CheckContext {
        let default_tol = match check.kind {
            CheckKind::RectifyingTransfer | CheckKind::ConformalRectifyingTransfer => {
                tol::COEFF_PRESERVATION
            }
            _ => tol::CHECKER_DEFAULT,
        };
        CheckContext {
            tolerance: check
                .tolerance
                .or(self.options.tolerance)
                .unwrap_or(default_tol),
            seed: self
                .seed
                .wrapping_add((index as u64).wrapping_mul(0x9e3779b97f4a7c15)),
            draws_per_sample: check.draws.unwrap_or(4),
        }
    }

    fn instance_id(&self, check: &CheckSpec) -> String {
        let kind = check.kind.id();
        match (&check.map, &check.curve) {
            (Some(m), Some(c)) => format!("{kind}[{m}/{c}]"),
            (Some(m), None) => format!("{kind}[{m}]"),
            (None, Some(c)) => format!("{kind}[{c}]"),
            (None, None) => kind.to_string(),
        }
    }

    fn run_check(&mut self, index: usize, check: &CheckSpec) -> Result<CheckReport, RunError> {
        let instance = self.instance_id(check);
        match check.kind {
            CheckKind::ClassifyMap => self.run_classify(check, instance),
            CheckKind::ConformalPartials => self.run_partials(check, instance),
            CheckKind::Rectifying => self.run_rectifying(check, instance),
            CheckKind::FrameInvariants => {
                let samples = self.curve_samples(check.curve.as_ref().unwrap())?;
                let report = theorems::check_frame_invariants(&samples);
                Ok(CheckReport::from_theorem(
                    instance,
                    check.kind.id(),
                    &report,
                ))
            }
            _ => self.run_transfer(index, check, instance),
        }
    }

    fn run_classify(
        &mut self,
        check: &CheckSpec,
        instance: String,
    ) -> Result<CheckReport, RunError> {
        let map = check.map.as_ref().unwrap();
        let m = &self.scenario.maps[map];
        let grid = check.grid.map(|g| (g[0], g[1])).unwrap_or(DEFAULT_GRID);
        let class = classify_map(&m.correspondence, grid, check.tolerance)
            .map_err(geom_err(format!("map `{map}`")))?;
        let outcome = class.kind.name().to_string();
        let passed = match &check.expect {
            Some(e) => *e == outcome,
            None => true,
        };
        let mut notes = vec![format!("c^2 estimate {}", class.c2)];
        if class.kind == MapKind::Homothety || class.kind == MapKind::Isometry {
            notes.push(format!(
                "dilation is constant within {:.3e}",
                class.rho2_spread
            ));
        }
        Ok(CheckReport {
            id: instance,
            kind: check.kind.id().to_string(),
            verdict: verdict_str(passed),
            outcome: Some(outcome),
            expected: check.expect.clone(),
            samples: class.rho2_samples.len(),
            skipped: 0,
            max_residual: Some(class.max_conformal_residual),
            mean_residual: None,
            tolerance: Some(class.tolerance),
            tracks: vec![
                TrackReport {
                    name: "conformal-coefficient-residual".into(),
                    max: class.max_conformal_residual,
                    tolerance: Some(class.tolerance),
                    samples: class.rho2_samples.len(),
                },
                TrackReport {
                    name: "rho2-spread".into(),
                    max: class.rho2_spread,
                    tolerance: None,
                    samples: class.rho2_samples.len(),
                },
                TrackReport {
                    name: "isometry-deviation".into(),
                    max: class.max_isometry_deviation,
                    tolerance: None,
                    samples: class.rho2_samples.len(),
                },
            ],
            notes,
        })
    }

    fn run_partials(
        &mut self,
        check: &CheckSpec,
        instance: String,
    ) -> Result<CheckReport, RunError> {
        let map = check.map.as_ref().unwrap();
        let m = &self.scenario.maps[map];
        let class = self.classification(map)?;
        if m.correspondence.dilation.is_none() && class.kind == MapKind::General {
            return Err(config(
                instance,
                "a general map needs a declared rho for the partial-transfer check",
            ));
        }
        let grid = check.grid.map(|g| (g[0], g[1])).unwrap_or(DEFAULT_GRID);
        let report = conformal_partial_check(&m.correspondence, grid)
            .map_err(geom_err(format!("map `{map}`")))?;
        let tolerance = check
            .tolerance
            .or(self.options.tolerance)
            .unwrap_or(tol::CHECKER_DEFAULT);
        let tracks = PARTIAL_IDENTITY_NAMES
            .iter()
            .zip(report.per_identity_max)
            .map(|(name, max)| TrackReport {
                name: format!("transfer-{name}"),
                max,
                tolerance: Some(tolerance),
                samples: report.samples,
            })
            .collect();
        Ok(CheckReport {
            id: instance,
            kind: check.kind.id().to_string(),
            verdict: verdict_str(report.max_residual <= tolerance),
            outcome: None,
            expected: None,
            samples: report.samples,
            skipped: 0,
            max_residual: Some(report.max_residual),
            mean_residual: None,
            tolerance: Some(tolerance),
            tracks,
            notes: vec![format!(
                "dilation {}",
                if m.correspondence.dilation.is_some() {
                    "declared"
                } else {
                    "estimated"
                }
            )],
        })
    }

    fn run_rectifying(
        &mut self,
        check: &CheckSpec,
        instance: String,
    ) -> Result<CheckReport, RunError> {
        let curve = check.curve.as_ref().unwrap();
        let d = self.decomposition(curve)?;
        let class = classify_darboux_rectifying(&d, check.tolerance)
            .map_err(|e| config(&instance, e.to_string()))?;
        let outcome = match class.verdict {
            RectifyingVerdict::Rectifying => "rectifying",
            RectifyingVerdict::NotRectifying => "not-rectifying",
        };
        let expected = check
            .expect
            .clone()
            .unwrap_or_else(|| "rectifying".to_string());
        let recon_tol = tol::RECONSTRUCTION * (1.0 + d.max_norm);
        let recon_ok = d.max_reconstruction <= recon_tol;
        Ok(CheckReport {
            id: instance,
            kind: check.kind.id().to_string(),
            verdict: verdict_str(outcome == expected && recon_ok),
            outcome: Some(outcome.to_string()),
            expected: Some(expected),
            samples: d.nu.len(),
            skipped: 0,
            max_residual: Some(d.max_abs_nu),
            mean_residual: Some(d.mean_abs_nu),
            tolerance: Some(class.tolerance),
            tracks: vec![
                TrackReport {
                    name: "witness-nu".into(),
                    max: class.witness_nu,
                    tolerance: None,
                    samples: d.nu.len(),
                },
                TrackReport {
                    name: "frame-reconstruction".into(),
                    max: d.max_reconstruction,
                    tolerance: Some(recon_tol),
                    samples: d.nu.len(),
                },
            ],
            notes: vec![format!(
                "witness sample {} with |nu| = {:.6e}",
                class.witness_index, class.witness_nu
            )],
        })
    }

    fn run_transfer(
        &mut self,
        index: usize,
        check: &CheckSpec,
        instance: String,
    ) -> Result<CheckReport, RunError> {
        let map = check.map.as_ref().unwrap().clone();
        let curve = check.curve.as_ref().unwrap().clone();
        let class = self.classification(&map)?;
        if check.kind.requires_isometry() && class.kind != MapKind::Isometry {
            return Err(config(
                &instance,
                format!(
                    "map `{map}` classifies as {}, but this check needs an isometry",
                    class.kind.name()
                ),
            ));
        }
        if check.kind.requires_conformal() && !class.kind.is_conformal() {
            return Err(config(
                &instance,
                format!(
                    "map `{map}` classifies as {}, but this check needs a conformal map",
                    class.kind.name()
                ),
            ));
        }
        let d = self.decomposition(&curve)?;
        let source_rectifying = classify_darboux_rectifying(&d, None)
            .map(|c| c.verdict == RectifyingVerdict::Rectifying);
        if check.kind.requires_rectifying_source() {
            match source_rectifying {
                Ok(true) => {}
                Ok(false) => {
                    return Err(config(
                        &instance,
                        format!("curve `{curve}` is not Darboux rectifying on the source patch"),
                    ))
                }
                Err(e) => return Err(config(&instance, e.to_string())),
            }
        }
        let push = self.pushforward(&map, &curve)?;
        let ctx = self.context(index, check);
        let mut report = match check.kind {
            CheckKind::RectifyingTransfer => {
                theorems::check_rectifying_transfer("rectifying-transfer", &push, &ctx)
            }
            CheckKind::ConformalRectifyingTransfer => {
                theorems::check_rectifying_transfer("conformal-rectifying-transfer", &push, &ctx)
            }
            CheckKind::TangentInvariance => theorems::check_tangent_invariance(&push, &ctx),
            CheckKind::NormalComponent => theorems::check_normal_component(&push, &ctx),
            CheckKind::BinormalComponent => theorems::check_binormal_component(&push, &ctx),
            CheckKind::ConformalTangentScaling => {
                theorems::check_conformal_tangent_scaling(&push, &ctx)
            }
            CheckKind::ConformalNormalComponent => {
                theorems::check_conformal_normal_component(&push, &ctx)
            }
            CheckKind::MongeBinormal => theorems::check_monge_binormal(&push, &ctx),
            _ => unreachable!("handled above"),
        };
        if matches!(source_rectifying, Ok(false)) {
            report.notes.push(
                "source curve is not rectifying; identities run on its tangential part".into(),
            );
        }
        Ok(CheckReport::from_theorem(
            instance,
            check.kind.id(),
            &report,
        ))
    }
}

/// Execute every check, in order.
pub fn run_scenario(scenario: &Scenario, options: RunOptions) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let mut runner = Runner::new(scenario, options);
    let mut checks = Vec::with_capacity(scenario.checks.len());
    for (i, check) in scenario.checks.iter().enumerate() {
        checks.push(runner.run_check(i, check)?);
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    let failed = checks.len() - passed;
    Ok(RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: scenario.name.clone(),
        scenario_digest: digest(&scenario.text),
        seed: runner.seed,
        checks,
        passed,
        failed,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    })
}
