//! Scenario file model: a TOML document naming surfaces, curves, maps and
//! the checks to run, compiled into the core library types with errors
//! that point back into the document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use darboux::expr;
use darboux::geom::{CurveOnSurface, Parametrization, SurfacePatch};
use darboux::surfmap::SurfaceCorrespondence;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub name: Option<String>,
    pub description: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub surfaces: BTreeMap<String, SurfaceSpec>,
    #[serde(default)]
    pub curves: BTreeMap<String, CurveSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
    pub output: Option<OutputSpec>,
}

/// Default output locations; command-line flags take precedence.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub report: Option<String>,
    pub csv_dir: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub x: String,
    pub y: String,
    pub z: String,
    pub u_range: [f64; 2],
    pub v_range: [f64; 2],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub surface: String,
    pub u: String,
    pub v: String,
    pub t_range: [f64; 2],
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub parametrization: ParametrizationSpec,
}

fn default_samples() -> usize {
    16
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ParametrizationSpec {
    #[default]
    Arclength,
    UnitSpeed,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub rho: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub kind: CheckKind,
    pub map: Option<String>,
    pub curve: Option<String>,
    /// Expected outcome for classification checks
    /// ("isometry" | "homothety" | "conformal" | "general" |
    ///  "rectifying" | "not-rectifying").
    pub expect: Option<String>,
    pub grid: Option<[usize; 2]>,
    pub tolerance: Option<f64>,
    /// Random tangent-coefficient draws per sample.
    pub draws: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    ClassifyMap,
    ConformalPartials,
    Rectifying,
    FrameInvariants,
    RectifyingTransfer,
    TangentInvariance,
    NormalComponent,
    BinormalComponent,
    ConformalRectifyingTransfer,
    ConformalTangentScaling,
    ConformalNormalComponent,
    MongeBinormal,
}

impl CheckKind {
    pub fn id(self) -> &'static str {
        match self {
            CheckKind::ClassifyMap => "classify-map",
            CheckKind::ConformalPartials => "conformal-partials",
            CheckKind::Rectifying => "rectifying",
            CheckKind::FrameInvariants => "frame-invariants",
            CheckKind::RectifyingTransfer => "rectifying-transfer",
            CheckKind::TangentInvariance => "tangent-invariance",
            CheckKind::NormalComponent => "normal-component",
            CheckKind::BinormalComponent => "binormal-component",
            CheckKind::ConformalRectifyingTransfer => "conformal-rectifying-transfer",
            CheckKind::ConformalTangentScaling => "conformal-tangent-scaling",
            CheckKind::ConformalNormalComponent => "conformal-normal-component",
            CheckKind::MongeBinormal => "monge-binormal",
        }
    }

    pub fn needs_map(self) -> bool {
        !matches!(self, CheckKind::Rectifying | CheckKind::FrameInvariants)
    }

    pub fn needs_curve(self) -> bool {
        !matches!(self, CheckKind::ClassifyMap | CheckKind::ConformalPartials)
    }

    /// Checks that require the correspondence to be an isometry.
    pub fn requires_isometry(self) -> bool {
        matches!(
            self,
            CheckKind::RectifyingTransfer
                | CheckKind::TangentInvariance
                | CheckKind::NormalComponent
                | CheckKind::BinormalComponent
        )
    }

    /// Checks that require at least a conformal correspondence.
    pub fn requires_conformal(self) -> bool {
        matches!(
            self,
            CheckKind::ConformalRectifyingTransfer
                | CheckKind::ConformalTangentScaling
                | CheckKind::ConformalNormalComponent
                | CheckKind::MongeBinormal
        )
    }

    /// Checks whose content presumes a rectifying source curve.
    pub fn requires_rectifying_source(self) -> bool {
        matches!(
            self,
            CheckKind::RectifyingTransfer | CheckKind::ConformalRectifyingTransfer
        )
    }
}

/// A configuration problem: the document does not describe a runnable
/// scenario. Reported with a path into the document; exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("scenario does not parse: {0}")]
    Toml(String),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

/// A validated scenario: all references resolved and all expressions parsed.
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub output: Option<OutputSpec>,
    pub surfaces: BTreeMap<String, SurfacePatch>,
    pub curves: BTreeMap<String, CompiledCurve>,
    pub maps: BTreeMap<String, CompiledMap>,
    pub checks: Vec<CheckSpec>,
    /// Raw document text, digested into the run report.
    pub text: String,
}

pub struct CompiledCurve {
    pub surface: String,
    pub curve: CurveOnSurface,
    pub samples: usize,
}

pub struct CompiledMap {
    pub source: String,
    pub target: String,
    pub correspondence: SurfaceCorrespondence,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_expr(text: &str, vars: &[&str], path: String) -> Result<darboux::expr::Expr, ConfigError> {
    expr::parse(text, vars).map_err(|e| invalid(path, e.to_string()))
}

pub fn load(text: &str, fallback_name: &str) -> Result<Scenario, ConfigError> {
    let doc: ScenarioDoc = {
        let de =
            toml::de::Deserializer::parse(text).map_err(|e| ConfigError::Toml(e.to_string()))?;
        serde_path_to_error::deserialize(de)
            .map_err(|e| invalid(e.path().to_string(), e.inner().to_string()))?
    };
    compile(doc, text, fallback_name)
}

fn compile(doc: ScenarioDoc, text: &str, fallback_name: &str) -> Result<Scenario, ConfigError> {
    let mut surfaces = BTreeMap::new();
    for (name, s) in &doc.surfaces {
        let base = format!("surfaces.{name}");
        // Negated comparisons so NaN endpoints are rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(s.u_range[0] < s.u_range[1]) {
            return Err(invalid(
                format!("{base}.u_range"),
                "range must be increasing",
            ));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(s.v_range[0] < s.v_range[1]) {
            return Err(invalid(
                format!("{base}.v_range"),
                "range must be increasing",
            ));
        }
        let patch = SurfacePatch {
            x: parse_expr(&s.x, &["u", "v"], format!("{base}.x"))?,
            y: parse_expr(&s.y, &["u", "v"], format!("{base}.y"))?,
            z: parse_expr(&s.z, &["u", "v"], format!("{base}.z"))?,
            u_range: (s.u_range[0], s.u_range[1]),
            v_range: (s.v_range[0], s.v_range[1]),
        };
        surfaces.insert(name.clone(), patch);
    }

    let mut curves = BTreeMap::new();
    for (name, c) in &doc.curves {
        let base = format!("curves.{name}");
        if !surfaces.contains_key(&c.surface) {
            return Err(invalid(
                format!("{base}.surface"),
                format!("unknown surface `{}`", c.surface),
            ));
        }
        if c.samples < 8 {
            return Err(invalid(
                format!("{base}.samples"),
                "sample count must be at least 8",
            ));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(c.t_range[0] < c.t_range[1]) {
            return Err(invalid(
                format!("{base}.t_range"),
                "range must be increasing",
            ));
        }
        let curve = CurveOnSurface {
            u: parse_expr(&c.u, &["t"], format!("{base}.u"))?,
            v: parse_expr(&c.v, &["t"], format!("{base}.v"))?,
            t_range: (c.t_range[0], c.t_range[1]),
            mode: match c.parametrization {
                ParametrizationSpec::Arclength => Parametrization::Reparametrize,
                ParametrizationSpec::UnitSpeed => Parametrization::AssertUnitSpeed,
            },
        };
        curves.insert(
            name.clone(),
            CompiledCurve {
                surface: c.surface.clone(),
                curve,
                samples: c.samples,
            },
        );
    }

    let mut maps = BTreeMap::new();
    for (name, m) in &doc.maps {
        let base = format!("maps.{name}");
        let source = surfaces
            .get(&m.source)
            .ok_or_else(|| {
                invalid(
                    format!("{base}.source"),
                    format!("unknown surface `{}`", m.source),
                )
            })?
            .clone();
        let target = surfaces
            .get(&m.target)
            .ok_or_else(|| {
                invalid(
                    format!("{base}.target"),
                    format!("unknown surface `{}`", m.target),
                )
            })?
            .clone();
        if source.u_range != target.u_range || source.v_range != target.v_range {
            return Err(invalid(
                base,
                "source and target patches must share one (u, v) domain",
            ));
        }
        let dilation = match &m.rho {
            Some(r) => Some(parse_expr(r, &["u", "v"], format!("{base}.rho"))?),
            None => None,
        };
        maps.insert(
            name.clone(),
            CompiledMap {
                source: m.source.clone(),
                target: m.target.clone(),
                correspondence: SurfaceCorrespondence {
                    source,
                    target,
                    dilation,
                },
            },
        );
    }

    for (i, check) in doc.checks.iter().enumerate() {
        let base = format!("checks[{i}]");
        if check.kind.needs_map() {
            let map_name = check
                .map
                .as_ref()
                .ok_or_else(|| invalid(format!("{base}.map"), "this check needs a map"))?;
            let map = maps.get(map_name).ok_or_else(|| {
                invalid(format!("{base}.map"), format!("unknown map `{map_name}`"))
            })?;
            if check.kind.needs_curve() {
                let curve_name = check
                    .curve
                    .as_ref()
                    .ok_or_else(|| invalid(format!("{base}.curve"), "this check needs a curve"))?;
                let curve = curves.get(curve_name).ok_or_else(|| {
                    invalid(
                        format!("{base}.curve"),
                        format!("unknown curve `{curve_name}`"),
                    )
                })?;
                if curve.surface != map.source {
                    return Err(invalid(
                        format!("{base}.curve"),
                        format!(
                            "curve `{curve_name}` lives on `{}`, but map `{map_name}` starts from `{}`",
                            curve.surface, map.source
                        ),
                    ));
                }
            }
        } else if check.kind.needs_curve() {
            let curve_name = check
                .curve
                .as_ref()
                .ok_or_else(|| invalid(format!("{base}.curve"), "this check needs a curve"))?;
            if !curves.contains_key(curve_name) {
                return Err(invalid(
                    format!("{base}.curve"),
                    format!("unknown curve `{curve_name}`"),
                ));
            }
        }
        if check.kind == CheckKind::MongeBinormal {
            let map = maps.get(check.map.as_ref().unwrap().as_str()).unwrap();
            if !map.correspondence.source.is_monge() || !map.correspondence.target.is_monge() {
                return Err(invalid(
                    format!("{base}.map"),
                    "both patches must be in Monge form (x = u, y = v)",
                ));
            }
        }
        if let Some(expect) = &check.expect {
            let ok = match check.kind {
                CheckKind::ClassifyMap => {
                    matches!(
                        expect.as_str(),
                        "isometry" | "homothety" | "conformal" | "general"
                    )
                }
                CheckKind::Rectifying => {
                    matches!(expect.as_str(), "rectifying" | "not-rectifying")
                }
                _ => false,
            };
            if !ok {
                return Err(invalid(
                    format!("{base}.expect"),
                    format!("`{expect}` is not a valid expectation for this check"),
                ));
            }
        }
        if let Some(g) = check.grid {
            if g[0] < 2 || g[1] < 2 {
                return Err(invalid(format!("{base}.grid"), "grid must be at least 2x2"));
            }
        }
    }

    let name = doc
        .name
        .clone()
        .unwrap_or_else(|| fallback_name.to_string());
    Ok(Scenario {
        name,
        seed: doc.seed,
        output: doc.output.clone(),
        surfaces,
        curves,
        maps,
        checks: doc.checks,
        text: text.to_string(),
    })
}
