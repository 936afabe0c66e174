//! Central numeric tolerances.
//!
//! Everything downstream (frame assembly, classification, checkers) pulls
//! its thresholds from here so there are no ad-hoc magic numbers scattered
//! through the crate.

/// A patch point counts as regular while EG - F^2 stays above this.
pub const REGULARITY: f64 = 1e-12;

/// Minimum curve speed; below this a point is treated as stationary.
pub const SPEED_MIN: f64 = 1e-10;

/// Allowed |speed - 1| when a curve asserts it is unit speed.
pub const UNIT_SPEED_DEV: f64 = 1e-6;

/// Below this curvature the Frenet normal and binormal are undefined and a
/// sample is flagged degenerate instead of erroring.
pub const KAPPA_MIN: f64 = 1e-8;

/// Orthonormality of {T,N,B} and {T,P,U} at every sample.
pub const FRAME_ORTHO: f64 = 1e-9;

/// Relative error allowed in kappa^2 = kappa_g^2 + kappa_n^2.
pub const CURVATURE_PYTHAGORAS: f64 = 1e-8;

/// Reconstructing P, U from (N, B, alpha).
pub const FRAME_ROTATION: f64 = 1e-8;

/// Agreement between two independent routes to the same quantity
/// (binormal via chart expansion, normal curvature via the second form).
pub const ROUTE_EQUIVALENCE: f64 = 1e-9;

/// The six metric-derivative identities relating second patch derivatives
/// to E_u ... G_v.
pub const METRIC_IDENTITY: f64 = 1e-10;

/// Internal cross-check of E_u computed two ways inside `first_form`.
pub const METRIC_SELF_CHECK: f64 = 1e-10;

/// Unit-speed identity E u'^2 + 2F u'v' + G v'^2 = 1.
pub const UNIT_SPEED_IDENTITY: f64 = 1e-9;

/// Absolute tolerance of the adaptive arc-length quadrature.
pub const ARCLEN_QUADRATURE: f64 = 1e-10;

/// Reproducibility of the total arc length.
pub const ARCLEN_TOTAL: f64 = 1e-9;

/// Convergence of the arc-length inversion (Newton with bisection fallback).
pub const ARCLEN_INVERT: f64 = 1e-12;

/// Default normalized-residual tolerance for the invariance checkers.
pub const CHECKER_DEFAULT: f64 = 1e-7;

/// Coefficient preservation in the rectifying-transfer checks.
pub const COEFF_PRESERVATION: f64 = 1e-9;

/// Two samples count as having equal curvature (or equal curvature ratios)
/// inside this window; the corollary gates only look at such samples.
pub const COROLLARY_WINDOW: f64 = 1e-10;

/// Residual allowed on samples admitted to a corollary gate.
pub const COROLLARY_GATE: f64 = 1e-9;

/// Base of the rectifying classification tolerance; scales with curve size
/// as base * (1 + max ||gamma||).
pub const RECTIFYING_BASE: f64 = 1e-8;

/// Position reconstruction lambda T + mu P + nu U vs gamma, scaled the same way.
pub const RECONSTRUCTION: f64 = 1e-10;

/// Default tolerance of the map classifier (isometry / homothety / conformal).
pub const CLASSIFY_MAP: f64 = 1e-8;

/// A checker verdict fails when more than this fraction of samples had to be
/// skipped as curvature-degenerate.
pub const MAX_SKIP_FRACTION: f64 = 0.2;

/// Normalized residual |l - r| / (1 + |l| + |r|), the scale used by every
/// checker tolerance in this crate.
pub fn normalized(left: f64, right: f64) -> f64 {
    (left - right).abs() / (1.0 + left.abs() + right.abs())
}
