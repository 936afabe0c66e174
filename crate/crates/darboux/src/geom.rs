//! Fundamental forms, unit normal, Frenet and Darboux frames, and the
//! four scalar invariants kappa, kappa_g, kappa_n, tau_g for a curve on a
//! parametric patch.
//!
//! All derivatives come from jets: the patch is evaluated with bivariate
//! jets for metric data and with univariate jets along the curve for
//! ambient derivatives. Arc-length derivatives are recovered pointwise by
//! the chain rule, so curves may be supplied in any parameter.

use crate::arclength::{self, ArcLengthError, ArcLengthMap};
use crate::expr::{self, EvalError, Expr, ParseError};
use crate::jets::{Jet1, Jet2, JetNum};
use crate::tol;
use crate::vec3::Vec3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("{context}: {source}")]
    Expr {
        context: &'static str,
        #[source]
        source: EvalError,
    },
    #[error("degenerate patch at (u, v) = ({u}, {v}): EG - F^2 = {w2:e}")]
    DegeneratePatch { u: f64, v: f64, w2: f64 },
    #[error("stationary curve point at t = {t}: speed {speed:e}")]
    StationaryPoint { t: f64, speed: f64 },
    #[error("curve is not unit speed at t = {t}: speed {speed}")]
    NotUnitSpeed { t: f64, speed: f64 },
    #[error("curve leaves the patch domain at t = {t}: (u, v) = ({u}, {v})")]
    OutsideDomain { t: f64, u: f64, v: f64 },
    #[error("metric derivative self-check failed at (u, v) = ({u}, {v}): deviation {deviation:e}")]
    MetricSelfCheck { u: f64, v: f64, deviation: f64 },
    #[error("declared dilation must be positive, got {value} at (u, v) = ({u}, {v})")]
    NonPositiveDilation { u: f64, v: f64, value: f64 },
    #[error("arc length is not strictly increasing near t = {t}")]
    NonMonotoneArcLength { t: f64 },
    #[error("arc-length quadrature failed to converge")]
    QuadratureDiverged,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

impl From<ArcLengthError<GeomError>> for GeomError {
    fn from(e: ArcLengthError<GeomError>) -> GeomError {
        match e {
            ArcLengthError::Speed(inner) => inner,
            ArcLengthError::NonMonotone { t } => GeomError::NonMonotoneArcLength { t },
            ArcLengthError::NoConvergence { .. } => GeomError::QuadratureDiverged,
        }
    }
}

/// A parametric surface patch: three coordinate expressions over (u, v)
/// and a rectangular domain.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
}

/// How the curve parameter relates to arc length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parametrization {
    /// Reparametrize by arc length numerically (sampling is even in s).
    #[default]
    Reparametrize,
    /// The scenario asserts the curve is already unit speed.
    AssertUnitSpeed,
}

/// A curve living in a patch's parameter domain: (u(t), v(t)) over [t0, t1].
#[derive(Debug, Clone)]
pub struct CurveOnSurface {
    pub u: Expr,
    pub v: Expr,
    pub t_range: (f64, f64),
    pub mode: Parametrization,
}

/// Patch point data: position, first and second partial derivative
/// vectors, plus the raw coordinate jets they came from.
#[derive(Debug, Clone, Copy)]
pub struct PatchJets {
    pub u: f64,
    pub v: f64,
    pub point: Vec3,
    pub eta_u: Vec3,
    pub eta_v: Vec3,
    pub eta_uu: Vec3,
    pub eta_uv: Vec3,
    pub eta_vv: Vec3,
    pub xj: Jet2,
    pub yj: Jet2,
    pub zj: Jet2,
}

/// First fundamental form coefficients and their parameter partials.
#[derive(Debug, Clone, Copy)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub e_u: f64,
    pub e_v: f64,
    pub f_u: f64,
    pub f_v: f64,
    pub g_u: f64,
    pub g_v: f64,
    /// EG - F^2.
    pub w2: f64,
}

/// Second fundamental form coefficients. The third is named `n2` to keep
/// clear of the Frenet normal symbol.
#[derive(Debug, Clone, Copy)]
pub struct SecondForm {
    pub l: f64,
    pub m: f64,
    pub n2: f64,
}

/// Arc-length derivatives of the coordinate curves at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CurveDerivs {
    /// sigma = |dgamma/dt|.
    pub speed: f64,
    pub du_ds: f64,
    pub d2u_ds2: f64,
    pub dv_ds: f64,
    pub d2v_ds2: f64,
    pub u_t: f64,
    pub u_tt: f64,
    pub v_t: f64,
    pub v_tt: f64,
}

/// Everything known about a curve point: both frames, the four scalar
/// invariants and the data they were assembled from.
///
/// Below [`tol::KAPPA_MIN`] the Frenet normal, binormal and the rotation
/// angle are undefined; such samples are flagged rather than erroring, and
/// `kappa_g`, `kappa_n`, `tau_g` are still produced.
#[derive(Debug, Clone)]
pub struct FrameSample {
    pub t: f64,
    /// Arc length from t0.
    pub s: f64,
    pub u: f64,
    pub v: f64,
    pub point: Vec3,
    /// T, the unit tangent.
    pub tangent: Vec3,
    /// P = U x T, the tangent-plane normal.
    pub tangent_normal: Vec3,
    /// U, the surface unit normal.
    pub surface_normal: Vec3,
    /// N, the Frenet principal normal (undefined at degenerate samples).
    pub normal: Option<Vec3>,
    /// B = T x N.
    pub binormal: Option<Vec3>,
    /// Rotation angle taking (N, B) to (P, U).
    pub alpha: Option<f64>,
    pub kappa: f64,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
    /// dT/ds.
    pub t_prime: Vec3,
    pub derivs: CurveDerivs,
    pub first_form: FirstForm,
    pub second_form: SecondForm,
    pub jets: PatchJets,
    /// |kappa_n via T'.U - kappa_n via the second form|, normalized.
    pub kappa_n_route_residual: f64,
    /// |B via T x N - B via the chart expansion|, normalized (zero at
    /// degenerate samples).
    pub binormal_route_residual: f64,
}

impl SurfacePatch {
    /// Build from expression text; components are expressions over (u, v).
    pub fn parse(
        x: &str,
        y: &str,
        z: &str,
        u_range: (f64, f64),
        v_range: (f64, f64),
    ) -> Result<SurfacePatch, ParseError> {
        Ok(SurfacePatch {
            x: expr::parse(x, &["u", "v"])?,
            y: expr::parse(y, &["u", "v"])?,
            z: expr::parse(z, &["u", "v"])?,
            u_range,
            v_range,
        })
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let eps_u = 1e-9 * (1.0 + (self.u_range.1 - self.u_range.0).abs());
        let eps_v = 1e-9 * (1.0 + (self.v_range.1 - self.v_range.0).abs());
        u >= self.u_range.0 - eps_u
            && u <= self.u_range.1 + eps_u
            && v >= self.v_range.0 - eps_v
            && v <= self.v_range.1 + eps_v
    }

    /// Height-graph form: x is exactly `u` and y is exactly `v`.
    pub fn is_monge(&self) -> bool {
        self.x.is_bare_variable("u") && self.y.is_bare_variable("v")
    }

    /// Ambient position at (u, v).
    pub fn position(&self, u: f64, v: f64) -> Result<Vec3, GeomError> {
        let b = [u, v];
        Ok(Vec3::new(
            self.x.eval_f64(&b).map_err(ctx("surface x"))?,
            self.y.eval_f64(&b).map_err(ctx("surface y"))?,
            self.z.eval_f64(&b).map_err(ctx("surface z"))?,
        ))
    }

    /// Position and all partials through second order.
    pub fn jets(&self, u: f64, v: f64) -> Result<PatchJets, GeomError> {
        let b = [Jet2::seed_u(u, 2), Jet2::seed_v(v, 2)];
        let xj = self.x.eval(&b).map_err(ctx("surface x"))?;
        let yj = self.y.eval(&b).map_err(ctx("surface y"))?;
        let zj = self.z.eval(&b).map_err(ctx("surface z"))?;
        Ok(PatchJets {
            u,
            v,
            point: Vec3::new(xj.v, yj.v, zj.v),
            eta_u: Vec3::new(xj.du, yj.du, zj.du),
            eta_v: Vec3::new(xj.dv, yj.dv, zj.dv),
            eta_uu: Vec3::new(xj.duu, yj.duu, zj.duu),
            eta_uv: Vec3::new(xj.duv, yj.duv, zj.duv),
            eta_vv: Vec3::new(xj.dvv, yj.dvv, zj.dvv),
            xj,
            yj,
            zj,
        })
    }

    pub fn first_form(&self, u: f64, v: f64) -> Result<FirstForm, GeomError> {
        first_form(&self.jets(u, v)?)
    }

    /// U = (eta_u x eta_v) / sqrt(EG - F^2).
    pub fn unit_normal(&self, u: f64, v: f64) -> Result<Vec3, GeomError> {
        Ok(normal_jets(&self.jets(u, v)?)?.0)
    }

    pub fn second_form(&self, u: f64, v: f64) -> Result<SecondForm, GeomError> {
        let jets = self.jets(u, v)?;
        let (normal, _, _) = normal_jets(&jets)?;
        Ok(second_form(&jets, normal))
    }

    /// The same patch translated by `c` (the position vector, and with it
    /// every origin-anchored quantity, shifts; derivatives do not).
    pub fn translated(&self, c: Vec3) -> SurfacePatch {
        let wrap = |e: &Expr, d: f64| {
            expr::parse(&format!("({}) + ({})", e.pretty(), d), &["u", "v"])
                .expect("translating a valid expression cannot fail")
        };
        SurfacePatch {
            x: wrap(&self.x, c.x),
            y: wrap(&self.y, c.y),
            z: wrap(&self.z, c.z),
            u_range: self.u_range,
            v_range: self.v_range,
        }
    }
}

impl CurveOnSurface {
    pub fn parse(
        u: &str,
        v: &str,
        t_range: (f64, f64),
        mode: Parametrization,
    ) -> Result<CurveOnSurface, ParseError> {
        Ok(CurveOnSurface {
            u: expr::parse(u, &["t"])?,
            v: expr::parse(v, &["t"])?,
            t_range,
            mode,
        })
    }

    /// (u(t), v(t)) as plain values.
    pub fn at(&self, t: f64) -> Result<(f64, f64), GeomError> {
        Ok((
            self.u.eval_f64(&[t]).map_err(ctx("curve u"))?,
            self.v.eval_f64(&[t]).map_err(ctx("curve v"))?,
        ))
    }
}

fn ctx(context: &'static str) -> impl Fn(EvalError) -> GeomError {
    move |source| GeomError::Expr { context, source }
}

/// E, F, G as order-1 jets in (u, v): values plus their parameter partials.
pub fn metric_jets(jets: &PatchJets) -> (Jet2, Jet2, Jet2) {
    let eu = Vec3::new(jets.xj.slice_du(), jets.yj.slice_du(), jets.zj.slice_du());
    let ev = Vec3::new(jets.xj.slice_dv(), jets.yj.slice_dv(), jets.zj.slice_dv());
    (eu.dot(eu), eu.dot(ev), ev.dot(ev))
}

/// First fundamental form with partials. E, F, G come from jet dot
/// products; the partials ride along in order-1 jets of the patch first
/// derivatives. E_u is cross-checked against 2 eta_uu . eta_u.
pub fn first_form(jets: &PatchJets) -> Result<FirstForm, GeomError> {
    let (e, f, g) = metric_jets(jets);
    let w2 = e.v * g.v - f.v * f.v;
    // Negated comparison so NaN also lands on the error path.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(w2 > tol::REGULARITY) {
        return Err(GeomError::DegeneratePatch {
            u: jets.u,
            v: jets.v,
            w2,
        });
    }
    let product_route = 2.0 * jets.eta_uu.dot(jets.eta_u);
    let deviation = tol::normalized(e.du, product_route);
    if deviation > tol::METRIC_SELF_CHECK {
        return Err(GeomError::MetricSelfCheck {
            u: jets.u,
            v: jets.v,
            deviation,
        });
    }
    Ok(FirstForm {
        e: e.v,
        f: f.v,
        g: g.v,
        e_u: e.du,
        e_v: e.dv,
        f_u: f.du,
        f_v: f.dv,
        g_u: g.du,
        g_v: g.dv,
        w2,
    })
}

impl FirstForm {
    /// Residuals of the six identities tying second patch derivatives to
    /// the metric partials, normalized.
    pub fn metric_identity_residuals(&self, jets: &PatchJets) -> [f64; 6] {
        [
            tol::normalized(jets.eta_uu.dot(jets.eta_u), self.e_u / 2.0),
            tol::normalized(jets.eta_uv.dot(jets.eta_u), self.e_v / 2.0),
            tol::normalized(jets.eta_uv.dot(jets.eta_v), self.g_u / 2.0),
            tol::normalized(jets.eta_vv.dot(jets.eta_v), self.g_v / 2.0),
            tol::normalized(jets.eta_uu.dot(jets.eta_v), self.f_u - self.e_v / 2.0),
            tol::normalized(jets.eta_vv.dot(jets.eta_u), self.f_v - self.g_u / 2.0),
        ]
    }
}

/// Unit normal plus its parameter partials, all propagated through the
/// normalization by order-1 jets: returns (U, U_u, U_v).
pub fn normal_jets(jets: &PatchJets) -> Result<(Vec3, Vec3, Vec3), GeomError> {
    let eu = Vec3::new(jets.xj.slice_du(), jets.yj.slice_du(), jets.zj.slice_du());
    let ev = Vec3::new(jets.xj.slice_dv(), jets.yj.slice_dv(), jets.zj.slice_dv());
    let c = eu.cross(ev);
    let norm2 = c.dot(c);
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(norm2.value() > tol::REGULARITY) {
        return Err(GeomError::DegeneratePatch {
            u: jets.u,
            v: jets.v,
            w2: norm2.value(),
        });
    }
    let norm = norm2
        .apply(crate::jets::Func::Sqrt)
        .expect("positive squared norm");
    let unit = c.div(norm).expect("nonzero norm");
    Ok((
        unit.values(),
        Vec3::new(unit.x.du, unit.y.du, unit.z.du),
        Vec3::new(unit.x.dv, unit.y.dv, unit.z.dv),
    ))
}

/// L = eta_uu . U, M = eta_uv . U, N2 = eta_vv . U.
pub fn second_form(jets: &PatchJets, unit_normal: Vec3) -> SecondForm {
    SecondForm {
        l: jets.eta_uu.dot(unit_normal),
        m: jets.eta_uv.dot(unit_normal),
        n2: jets.eta_vv.dot(unit_normal),
    }
}

/// Ambient curve jets at t: gamma with derivatives through third order.
fn curve_jets(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    t: f64,
) -> Result<(Jet1, Jet1, Vec3<Jet1>), GeomError> {
    let tj = Jet1::seed(t, 3);
    let uj = curve.u.eval(&[tj]).map_err(ctx("curve u"))?;
    let vj = curve.v.eval(&[tj]).map_err(ctx("curve v"))?;
    if !patch.contains(uj.value(), vj.value()) {
        return Err(GeomError::OutsideDomain {
            t,
            u: uj.value(),
            v: vj.value(),
        });
    }
    let b = [uj, vj];
    let gamma = Vec3::new(
        patch.x.eval(&b).map_err(ctx("surface x"))?,
        patch.y.eval(&b).map_err(ctx("surface y"))?,
        patch.z.eval(&b).map_err(ctx("surface z"))?,
    );
    Ok((uj, vj, gamma))
}

/// Speed sigma = |dgamma/dt| at t (order-1 jet evaluation).
pub fn curve_speed(patch: &SurfacePatch, curve: &CurveOnSurface, t: f64) -> Result<f64, GeomError> {
    let tj = Jet1::seed(t, 1);
    let uj = curve.u.eval(&[tj]).map_err(ctx("curve u"))?;
    let vj = curve.v.eval(&[tj]).map_err(ctx("curve v"))?;
    let b = [uj, vj];
    let dx = patch.x.eval(&b).map_err(ctx("surface x"))?.d1();
    let dy = patch.y.eval(&b).map_err(ctx("surface y"))?.d1();
    let dz = patch.z.eval(&b).map_err(ctx("surface z"))?.d1();
    Ok(Vec3::new(dx, dy, dz).norm())
}

/// Arc-length derivatives of u and v at t, by the chain rule through
/// sigma. In `AssertUnitSpeed` mode additionally requires |sigma - 1| to
/// stay within [`tol::UNIT_SPEED_DEV`].
pub fn curve_derivatives(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    t: f64,
) -> Result<CurveDerivs, GeomError> {
    let (uj, vj, gamma) = curve_jets(patch, curve, t)?;
    derivs_from_jets(curve, t, uj, vj, &gamma)
}

fn derivs_from_jets(
    curve: &CurveOnSurface,
    t: f64,
    uj: Jet1,
    vj: Jet1,
    gamma: &Vec3<Jet1>,
) -> Result<CurveDerivs, GeomError> {
    let gamma_t = Vec3::new(gamma.x.d1(), gamma.y.d1(), gamma.z.d1());
    let gamma_tt = Vec3::new(gamma.x.d2(), gamma.y.d2(), gamma.z.d2());
    let speed = gamma_t.norm();
    if speed <= tol::SPEED_MIN {
        return Err(GeomError::StationaryPoint { t, speed });
    }
    if curve.mode == Parametrization::AssertUnitSpeed && (speed - 1.0).abs() > tol::UNIT_SPEED_DEV {
        return Err(GeomError::NotUnitSpeed { t, speed });
    }
    let speed_t = gamma_t.dot(gamma_tt) / speed;
    let s3 = speed * speed * speed;
    Ok(CurveDerivs {
        speed,
        du_ds: uj.d1() / speed,
        d2u_ds2: (uj.d2() * speed - uj.d1() * speed_t) / s3,
        dv_ds: vj.d1() / speed,
        d2v_ds2: (vj.d2() * speed - vj.d1() * speed_t) / s3,
        u_t: uj.d1(),
        u_tt: uj.d2(),
        v_t: vj.d1(),
        v_tt: vj.d2(),
    })
}

/// Full frame data at parameter t, with `s` supplied by the caller.
pub fn frame_sample_at(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    t: f64,
    s: f64,
) -> Result<FrameSample, GeomError> {
    let (uj, vj, gamma) = curve_jets(patch, curve, t)?;
    let derivs = derivs_from_jets(curve, t, uj, vj, &gamma)?;
    let speed = derivs.speed;

    let point = gamma.values();
    let gamma_t = Vec3::new(gamma.x.d1(), gamma.y.d1(), gamma.z.d1());
    let gamma_tt = Vec3::new(gamma.x.d2(), gamma.y.d2(), gamma.z.d2());
    let speed_t = gamma_t.dot(gamma_tt) / speed;

    let tangent = gamma_t.scale(1.0 / speed);
    // dT/ds = gamma_tt / sigma^2 - gamma_t sigma_t / sigma^3.
    let t_prime =
        gamma_tt.scale(1.0 / (speed * speed)) - gamma_t.scale(speed_t / (speed * speed * speed));

    let jets = patch.jets(uj.value(), vj.value())?;
    let ff = first_form(&jets)?;
    let (surface_normal, n_u, n_v) = normal_jets(&jets)?;
    let sf = second_form(&jets, surface_normal);

    let tangent_normal = surface_normal.cross(tangent);
    let kappa = t_prime.norm();
    let kappa_g = t_prime.dot(tangent_normal);
    let kappa_n = t_prime.dot(surface_normal);
    let kappa_n_form = sf.l * derivs.du_ds * derivs.du_ds
        + 2.0 * sf.m * derivs.du_ds * derivs.dv_ds
        + sf.n2 * derivs.dv_ds * derivs.dv_ds;
    let kappa_n_route_residual = tol::normalized(kappa_n, kappa_n_form);

    // dU/ds, then dP/ds = U' x T + U x T', and tau_g = P' . U.
    let n_prime = n_u.scale(derivs.du_ds) + n_v.scale(derivs.dv_ds);
    let p_prime = n_prime.cross(tangent) + surface_normal.cross(t_prime);
    let tau_g = p_prime.dot(surface_normal);

    let (normal, binormal, alpha, binormal_route_residual) = if kappa >= tol::KAPPA_MIN {
        let normal = t_prime.scale(1.0 / kappa);
        let binormal = tangent.cross(normal);
        let chart = binormal_chart_route(&jets, &derivs, kappa);
        let residual = (binormal - chart).norm() / (1.0 + binormal.norm() + chart.norm());
        let alpha = f64::atan2(tangent_normal.dot(binormal), tangent_normal.dot(normal));
        (Some(normal), Some(binormal), Some(alpha), residual)
    } else {
        (None, None, None, 0.0)
    };

    Ok(FrameSample {
        t,
        s,
        u: uj.value(),
        v: vj.value(),
        point,
        tangent,
        tangent_normal,
        surface_normal,
        normal,
        binormal,
        alpha,
        kappa,
        kappa_g,
        kappa_n,
        tau_g,
        t_prime,
        derivs,
        first_form: ff,
        second_form: sf,
        jets,
        kappa_n_route_residual,
        binormal_route_residual,
    })
}

/// Frame data at t, with the arc length from t0 computed by quadrature.
pub fn frame_sample(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    t: f64,
) -> Result<FrameSample, GeomError> {
    let s = match curve.mode {
        Parametrization::AssertUnitSpeed => t - curve.t_range.0,
        Parametrization::Reparametrize => {
            let mut speed = |t| curve_speed(patch, curve, t);
            arclength::integrate(&mut speed, curve.t_range.0, t, tol::ARCLEN_QUADRATURE)?
        }
    };
    frame_sample_at(patch, curve, t, s)
}

/// The binormal assembled from chart data: the expansion of T x T' in
/// patch derivatives, divided by kappa. An independent route used to
/// cross-check B = T x N.
fn binormal_chart_route(jets: &PatchJets, d: &CurveDerivs, kappa: f64) -> Vec3 {
    let (u1, u2, v1, v2) = (d.du_ds, d.d2u_ds2, d.dv_ds, d.d2v_ds2);
    let b = jets.eta_u.cross(jets.eta_v).scale(u1 * v2 - v1 * u2)
        + jets.eta_u.cross(jets.eta_uu).scale(u1 * u1 * u1)
        + jets.eta_u.cross(jets.eta_uv).scale(2.0 * u1 * u1 * v1)
        + jets.eta_u.cross(jets.eta_vv).scale(u1 * v1 * v1)
        + jets.eta_v.cross(jets.eta_uu).scale(u1 * u1 * v1)
        + jets.eta_v.cross(jets.eta_uv).scale(2.0 * u1 * v1 * v1)
        + jets.eta_v.cross(jets.eta_vv).scale(v1 * v1 * v1);
    b.scale(1.0 / kappa)
}

/// Sample the curve: evenly in arc length (default) or evenly in t when
/// the curve asserts unit speed.
pub fn sample_curve(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    n: usize,
) -> Result<Vec<FrameSample>, GeomError> {
    if n < 2 {
        return Err(GeomError::TooFewSamples { needed: 2, got: n });
    }
    let (t0, t1) = curve.t_range;
    let mut out = Vec::with_capacity(n);
    match curve.mode {
        Parametrization::AssertUnitSpeed => {
            for i in 0..n {
                let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
                out.push(frame_sample_at(patch, curve, t, t - t0)?);
            }
        }
        Parametrization::Reparametrize => {
            let map = reparametrize_arclength(patch, curve, n)?;
            for &(s, t) in &map.samples {
                out.push(frame_sample_at(patch, curve, t, s)?);
            }
        }
    }
    Ok(out)
}

/// Tabulate t(s) at n evenly spaced arc lengths.
pub fn reparametrize_arclength(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    n: usize,
) -> Result<ArcLengthMap, GeomError> {
    if n < 2 {
        return Err(GeomError::TooFewSamples { needed: 2, got: n });
    }
    let mut speed = |t| curve_speed(patch, curve, t);
    Ok(arclength::reparametrize(
        &mut speed,
        curve.t_range.0,
        curve.t_range.1,
        n,
    )?)
}

/// Total arc length of the curve over its parameter range.
pub fn curve_length(patch: &SurfacePatch, curve: &CurveOnSurface) -> Result<f64, GeomError> {
    let mut speed = |t| curve_speed(patch, curve, t);
    Ok(arclength::integrate(
        &mut speed,
        curve.t_range.0,
        curve.t_range.1,
        tol::ARCLEN_QUADRATURE,
    )?)
}

impl FrameSample {
    pub fn is_degenerate(&self) -> bool {
        self.normal.is_none()
    }

    /// Worst deviation of the six {T,P,U} pairwise dot products from the
    /// identity pattern.
    pub fn darboux_orthonormality_residual(&self) -> f64 {
        ortho_residual(self.tangent, self.tangent_normal, self.surface_normal)
    }

    /// The same for {T,N,B}; None at degenerate samples.
    pub fn frenet_orthonormality_residual(&self) -> Option<f64> {
        Some(ortho_residual(self.tangent, self.normal?, self.binormal?))
    }

    /// Relative error of kappa^2 = kappa_g^2 + kappa_n^2; None where the
    /// curvature is degenerate.
    pub fn pythagoras_residual(&self) -> Option<f64> {
        if self.kappa < tol::KAPPA_MIN {
            return None;
        }
        let k2 = self.kappa * self.kappa;
        Some((k2 - (self.kappa_g * self.kappa_g + self.kappa_n * self.kappa_n)).abs() / k2)
    }

    /// Reconstruct P and U from (N, B, alpha) and measure the worst
    /// component deviation.
    pub fn rotation_residual(&self) -> Option<f64> {
        let n = self.normal?;
        let b = self.binormal?;
        let a = self.alpha?;
        let p = n.scale(a.cos()) + b.scale(a.sin());
        let u = n.scale(-a.sin()) + b.scale(a.cos());
        Some(
            (self.tangent_normal - p)
                .norm()
                .max((self.surface_normal - u).norm()),
        )
    }

    /// |E u'^2 + 2F u'v' + G v'^2 - 1|: the unit-speed identity in the metric.
    pub fn unit_speed_identity_residual(&self) -> f64 {
        let ff = &self.first_form;
        let d = &self.derivs;
        (ff.e * d.du_ds * d.du_ds + 2.0 * ff.f * d.du_ds * d.dv_ds + ff.g * d.dv_ds * d.dv_ds - 1.0)
            .abs()
    }
}

fn ortho_residual(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let mut worst: f64 = 0.0;
    for (dot, want) in [
        (a.dot(a), 1.0),
        (b.dot(b), 1.0),
        (c.dot(c), 1.0),
        (a.dot(b), 0.0),
        (a.dot(c), 0.0),
        (b.dot(c), 0.0),
    ] {
        worst = worst.max((dot - want).abs());
    }
    worst
}
