//! Correspondences between two patches over a shared parameter domain.
//!
//! The map is the identity in (u, v): the basis vectors eta_u, eta_v of
//! the source are carried to their barred counterparts on the target, so
//! pushforwards of tangent vectors are literal and testable. A
//! correspondence is classified as isometry / homothety / conformal /
//! general from the first-form coefficients on a sample grid.

use crate::expr::Expr;
use crate::geom::{
    self, first_form, frame_sample_at, metric_jets, CurveOnSurface, FrameSample, GeomError,
    Parametrization, SurfacePatch,
};
use crate::jets::{Func, Jet2, JetNum};
use crate::rectify::{decompose_position, PositionDecomposition};
use crate::tol;
use crate::vec3::Vec3;

/// Two patches over a shared (u, v) domain, with an optional declared
/// dilation expression rho(u, v).
#[derive(Debug, Clone)]
pub struct SurfaceCorrespondence {
    pub source: SurfacePatch,
    pub target: SurfacePatch,
    pub dilation: Option<Expr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Isometry,
    Homothety,
    Conformal,
    General,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Isometry => "isometry",
            MapKind::Homothety => "homothety",
            MapKind::Conformal => "conformal",
            MapKind::General => "general",
        }
    }

    /// True when this kind scales the metric pointwise (isometry and
    /// homothety included).
    pub fn is_conformal(self) -> bool {
        self != MapKind::General
    }
}

/// Result of grid classification. The reported kind is the most specific
/// class whose residuals pass: isometry implies homothety implies conformal.
#[derive(Debug, Clone)]
pub struct MapClassification {
    pub kind: MapKind,
    /// Estimated squared dilation per grid point.
    pub rho2_samples: Vec<((f64, f64), f64)>,
    /// Worst normalized residual of F-bar = rho^2 F and G-bar = rho^2 G.
    pub max_conformal_residual: f64,
    /// Relative spread (max - min) / mean of rho^2 over the grid.
    pub rho2_spread: f64,
    /// Worst |rho^2 - 1|.
    pub max_isometry_deviation: f64,
    /// Mean rho^2; the homothety constant c^2 when the spread is tight.
    pub c2: f64,
    pub tolerance: f64,
}

/// Residuals of the six first-form partial transfer identities
/// (E-bar_u = 2 rho rho_u E + rho^2 E_u and the five analogues).
#[derive(Debug, Clone)]
pub struct PartialTransferReport {
    pub per_identity_max: [f64; 6],
    pub max_residual: f64,
    pub samples: usize,
}

pub const PARTIAL_IDENTITY_NAMES: [&str; 6] = ["E_u", "E_v", "F_u", "F_v", "G_u", "G_v"];

/// Everything the invariance checkers need about one curve carried
/// through a correspondence: frames on both sides, the source position
/// decomposition, the pushed vector lambda T-bar + mu P-bar, and the
/// dilation data per sample.
#[derive(Debug, Clone)]
pub struct PushforwardCurve {
    pub source: Vec<FrameSample>,
    pub barred: Vec<FrameSample>,
    pub decomposition: PositionDecomposition,
    /// V-bar = lambda T-bar + mu P-bar per sample.
    pub pushed: Vec<Vec3>,
    /// rho^2 = E-bar / E per sample.
    pub rho2: Vec<f64>,
    /// Order-1 dilation jets per sample: declared if present, otherwise
    /// estimated as sqrt(E-bar / E) with partials carried by jets.
    pub rho_jets: Vec<Jet2>,
    pub source_length: f64,
    pub barred_length: f64,
}

/// Evenly spaced inclusive grid over the source patch domain.
pub fn grid_points(patch: &SurfacePatch, grid: (usize, usize)) -> Vec<(f64, f64)> {
    let (nu, nv) = (grid.0.max(2), grid.1.max(2));
    let mut pts = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = patch.u_range.0 + (patch.u_range.1 - patch.u_range.0) * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let v =
                patch.v_range.0 + (patch.v_range.1 - patch.v_range.0) * j as f64 / (nv - 1) as f64;
            pts.push((u, v));
        }
    }
    pts
}

/// Classify the correspondence on a sample grid.
pub fn classify_map(
    corr: &SurfaceCorrespondence,
    grid: (usize, usize),
    tolerance: Option<f64>,
) -> Result<MapClassification, GeomError> {
    let tolerance = tolerance.unwrap_or(tol::CLASSIFY_MAP);
    let pts = grid_points(&corr.source, grid);
    let mut rho2_samples = Vec::with_capacity(pts.len());
    let mut max_conformal_residual = 0.0_f64;
    let mut rho2_min = f64::INFINITY;
    let mut rho2_max = f64::NEG_INFINITY;
    let mut rho2_sum = 0.0;
    let mut max_isometry_deviation = 0.0_f64;
    for &(u, v) in &pts {
        let ff = corr.source.first_form(u, v)?;
        let bf = corr.target.first_form(u, v)?;
        let rho2 = bf.e / ff.e;
        rho2_samples.push(((u, v), rho2));
        let rf = tol::normalized(bf.f, rho2 * ff.f);
        let rg = tol::normalized(bf.g, rho2 * ff.g);
        max_conformal_residual = max_conformal_residual.max(rf).max(rg);
        rho2_min = rho2_min.min(rho2);
        rho2_max = rho2_max.max(rho2);
        rho2_sum += rho2;
        max_isometry_deviation = max_isometry_deviation.max((rho2 - 1.0).abs());
    }
    let c2 = rho2_sum / pts.len() as f64;
    let rho2_spread = (rho2_max - rho2_min) / c2.abs().max(f64::MIN_POSITIVE);
    let kind = if max_conformal_residual > tolerance {
        MapKind::General
    } else if rho2_spread > tolerance {
        MapKind::Conformal
    } else if max_isometry_deviation > tolerance {
        MapKind::Homothety
    } else {
        MapKind::Isometry
    };
    Ok(MapClassification {
        kind,
        rho2_samples,
        max_conformal_residual,
        rho2_spread,
        max_isometry_deviation,
        c2,
        tolerance,
    })
}

/// Dilation jet at a point: the declared expression when present (must be
/// positive), otherwise sqrt(E-bar / E) estimated through jets.
pub fn dilation_jet(corr: &SurfaceCorrespondence, u: f64, v: f64) -> Result<Jet2, GeomError> {
    if let Some(rho) = &corr.dilation {
        let j = rho
            .eval(&[Jet2::seed_u(u, 1), Jet2::seed_v(v, 1)])
            .map_err(|source| GeomError::Expr {
                context: "dilation rho",
                source,
            })?;
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(j.value() > 0.0) {
            return Err(GeomError::NonPositiveDilation {
                u,
                v,
                value: j.value(),
            });
        }
        Ok(j)
    } else {
        let sj = corr.source.jets(u, v)?;
        let tj = corr.target.jets(u, v)?;
        first_form(&sj)?;
        first_form(&tj)?;
        let (es, _, _) = metric_jets(&sj);
        let (et, _, _) = metric_jets(&tj);
        // Regularity of both patches makes the ratio strictly positive.
        let ratio = et.div(es).expect("regular patch has positive E");
        Ok(ratio.apply(Func::Sqrt).expect("positive metric ratio"))
    }
}

/// Check the six partial transfer identities on a grid, with declared or
/// estimated dilation jets.
pub fn conformal_partial_check(
    corr: &SurfaceCorrespondence,
    grid: (usize, usize),
) -> Result<PartialTransferReport, GeomError> {
    let pts = grid_points(&corr.source, grid);
    let mut per_identity_max = [0.0_f64; 6];
    for &(u, v) in &pts {
        let sj = corr.source.jets(u, v)?;
        let tj = corr.target.jets(u, v)?;
        let ff = first_form(&sj)?;
        let bf = first_form(&tj)?;
        let rho = dilation_jet(corr, u, v)?;
        let r2 = rho.v * rho.v;
        let ru = 2.0 * rho.v * rho.du;
        let rv = 2.0 * rho.v * rho.dv;
        let checks = [
            (bf.e_u, ru * ff.e + r2 * ff.e_u),
            (bf.e_v, rv * ff.e + r2 * ff.e_v),
            (bf.f_u, ru * ff.f + r2 * ff.f_u),
            (bf.f_v, rv * ff.f + r2 * ff.f_v),
            (bf.g_u, ru * ff.g + r2 * ff.g_u),
            (bf.g_v, rv * ff.g + r2 * ff.g_v),
        ];
        for (slot, (lhs, rhs)) in per_identity_max.iter_mut().zip(checks) {
            *slot = slot.max(tol::normalized(lhs, rhs));
        }
    }
    let max_residual = per_identity_max.iter().copied().fold(0.0, f64::max);
    Ok(PartialTransferReport {
        per_identity_max,
        max_residual,
        samples: pts.len(),
    })
}

/// Carry a curve through the correspondence.
///
/// The barred curve is the same (u(t), v(t)) on the target patch,
/// reparametrized by its own arc length for all barred frame quantities
/// (under an isometry the two arc lengths coincide).
pub fn pushforward_curve(
    corr: &SurfaceCorrespondence,
    curve: &CurveOnSurface,
    n: usize,
) -> Result<PushforwardCurve, GeomError> {
    let source = geom::sample_curve(&corr.source, curve, n)?;
    let barred_curve = CurveOnSurface {
        u: curve.u.clone(),
        v: curve.v.clone(),
        t_range: curve.t_range,
        mode: Parametrization::Reparametrize,
    };
    let mut barred = Vec::with_capacity(source.len());
    let mut barred_s = 0.0;
    let mut prev_t = curve.t_range.0;
    for fs in &source {
        let mut speed = |t| geom::curve_speed(&corr.target, &barred_curve, t);
        barred_s += crate::arclength::integrate(&mut speed, prev_t, fs.t, tol::ARCLEN_QUADRATURE)
            .map_err(GeomError::from)?;
        prev_t = fs.t;
        barred.push(frame_sample_at(
            &corr.target,
            &barred_curve,
            fs.t,
            barred_s,
        )?);
    }
    let decomposition = decompose_position(&source);
    let mut pushed = Vec::with_capacity(source.len());
    let mut rho2 = Vec::with_capacity(source.len());
    let mut rho_jets = Vec::with_capacity(source.len());
    for (i, (s, b)) in source.iter().zip(&barred).enumerate() {
        pushed.push(
            b.tangent.scale(decomposition.lambda[i]) + b.tangent_normal.scale(decomposition.mu[i]),
        );
        rho2.push(b.first_form.e / s.first_form.e);
        rho_jets.push(dilation_jet(corr, s.u, s.v)?);
    }
    let source_length = geom::curve_length(&corr.source, curve)?;
    let barred_length = barred_s;
    Ok(PushforwardCurve {
        source,
        barred,
        decomposition,
        pushed,
        rho2,
        rho_jets,
        source_length,
        barred_length,
    })
}
