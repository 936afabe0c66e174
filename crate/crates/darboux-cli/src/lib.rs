//! Library surface of the scenario front end: scenario loading, check
//! execution, reports, sample-table export, the finite-difference
//! verification pass and the built-in demo suite.

pub mod demos;
pub mod export;
pub mod fdoracle;
pub mod report;
pub mod runner;
pub mod scenario;

use scenario::{ConfigError, Scenario};

/// Resolve `demo:<name>` or a filesystem path into scenario text.
pub fn resolve_scenario_text(spec: &str) -> Result<(String, String), ConfigError> {
    if let Some(name) = spec.strip_prefix("demo:") {
        let demo = demos::find(name).ok_or_else(|| ConfigError::Invalid {
            path: "scenario".into(),
            message: format!("unknown demo `{name}` (run `darboux demo --list` for the catalog)"),
        })?;
        return Ok((demo.text.to_string(), demo.name.to_string()));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| ConfigError::Invalid {
        path: "scenario".into(),
        message: format!("cannot read `{spec}`: {e}"),
    })?;
    let fallback = std::path::Path::new(spec)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    Ok((text, fallback))
}

/// Load and validate a scenario from `demo:<name>` or a path.
pub fn load_scenario(spec: &str) -> Result<Scenario, ConfigError> {
    let (text, fallback) = resolve_scenario_text(spec)?;
    scenario::load(&text, &fallback)
}
