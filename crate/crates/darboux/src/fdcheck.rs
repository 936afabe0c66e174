//! Independent finite-difference verification of the jet pipeline.
//!
//! Recomputes the first-form coefficients, their partials, kappa, kappa_n
//! and the metric geodesic curvature at given curve samples using central
//! differences of the plain-number evaluator only, then reports the worst
//! normalized deviation from the jet-computed values. First derivatives
//! use the requested step h; second derivatives use 10 h, which balances
//! truncation against roundoff for binary64.

use crate::geom::{CurveOnSurface, FrameSample, GeomError, SurfacePatch};
use crate::theorems::metric_geodesic_curvature;
use crate::tol;
use crate::vec3::Vec3;

pub const QUANTITIES: [&str; 12] = [
    "E", "F", "G", "E_u", "E_v", "F_u", "F_v", "G_u", "G_v", "kappa", "kappa_n", "A",
];

#[derive(Debug, Clone)]
pub struct FdReport {
    pub step: f64,
    /// Worst normalized deviation per quantity, ordered as [`QUANTITIES`].
    pub per_quantity: [f64; 12],
    pub worst: f64,
    pub worst_quantity: &'static str,
    pub samples: usize,
}

struct FdMetric {
    e: f64,
    f: f64,
    g: f64,
}

fn fd_metric(patch: &SurfacePatch, u: f64, v: f64, h: f64) -> Result<FdMetric, GeomError> {
    let eu = (patch.position(u + h, v)? - patch.position(u - h, v)?).scale(0.5 / h);
    let ev = (patch.position(u, v + h)? - patch.position(u, v - h)?).scale(0.5 / h);
    Ok(FdMetric {
        e: eu.dot(eu),
        f: eu.dot(ev),
        g: ev.dot(ev),
    })
}

fn fd_curve_point(patch: &SurfacePatch, curve: &CurveOnSurface, t: f64) -> Result<Vec3, GeomError> {
    let (u, v) = curve.at(t)?;
    patch.position(u, v)
}

/// Compare jet-derived quantities at the given samples against the
/// finite-difference route.
pub fn compare(
    patch: &SurfacePatch,
    curve: &CurveOnSurface,
    samples: &[FrameSample],
    step: f64,
) -> Result<FdReport, GeomError> {
    let h = step;
    let h2 = 10.0 * step;
    let mut per_quantity = [0.0_f64; 12];
    for fs in samples {
        let (u, v) = (fs.u, fs.v);

        // Patch derivatives by differences of the plain evaluator.
        let p = |du: f64, dv: f64| patch.position(u + du, v + dv);
        let eta_u = (p(h, 0.0)? - p(-h, 0.0)?).scale(0.5 / h);
        let eta_v = (p(0.0, h)? - p(0.0, -h)?).scale(0.5 / h);
        let m = FdMetric {
            e: eta_u.dot(eta_u),
            f: eta_u.dot(eta_v),
            g: eta_v.dot(eta_v),
        };
        // Metric partials by an outer difference of the FD-assembled metric.
        let mu_p = fd_metric(patch, u + h2, v, h)?;
        let mu_m = fd_metric(patch, u - h2, v, h)?;
        let mv_p = fd_metric(patch, u, v + h2, h)?;
        let mv_m = fd_metric(patch, u, v - h2, h)?;
        let d_u = |a: f64, b: f64| (a - b) / (2.0 * h2);
        let e_u = d_u(mu_p.e, mu_m.e);
        let f_u = d_u(mu_p.f, mu_m.f);
        let g_u = d_u(mu_p.g, mu_m.g);
        let e_v = d_u(mv_p.e, mv_m.e);
        let f_v = d_u(mv_p.f, mv_m.f);
        let g_v = d_u(mv_p.g, mv_m.g);

        // Ambient curve derivatives.
        let t = fs.t;
        let c = |dt: f64| fd_curve_point(patch, curve, t + dt);
        let gamma_t = (c(h)? - c(-h)?).scale(0.5 / h);
        let gamma_tt = (c(h2)? - c(0.0)?.scale(2.0) + c(-h2)?).scale(1.0 / (h2 * h2));
        let speed = gamma_t.norm();
        let speed_t = gamma_t.dot(gamma_tt) / speed;
        let t_prime = gamma_tt.scale(1.0 / (speed * speed))
            - gamma_t.scale(speed_t / (speed * speed * speed));
        let kappa = t_prime.norm();
        let normal = eta_u.cross(eta_v);
        let kappa_n = t_prime.dot(normal.normalized());

        // Coordinate-curve arc-length derivatives.
        let cu = |dt: f64| curve.at(t + dt);
        let (u_p, v_p) = cu(h)?;
        let (u_m, v_m) = cu(-h)?;
        let (u_p2, v_p2) = cu(h2)?;
        let (u_m2, v_m2) = cu(-h2)?;
        let (u_c, v_c) = cu(0.0)?;
        let u_t = (u_p - u_m) / (2.0 * h);
        let v_t = (v_p - v_m) / (2.0 * h);
        let u_tt = (u_p2 - 2.0 * u_c + u_m2) / (h2 * h2);
        let v_tt = (v_p2 - 2.0 * v_c + v_m2) / (h2 * h2);
        let s3 = speed * speed * speed;
        let derivs = crate::geom::CurveDerivs {
            speed,
            du_ds: u_t / speed,
            d2u_ds2: (u_tt * speed - u_t * speed_t) / s3,
            dv_ds: v_t / speed,
            d2v_ds2: (v_tt * speed - v_t * speed_t) / s3,
            u_t,
            u_tt,
            v_t,
            v_tt,
        };
        let ff = crate::geom::FirstForm {
            e: m.e,
            f: m.f,
            g: m.g,
            e_u,
            e_v,
            f_u,
            f_v,
            g_u,
            g_v,
            w2: m.e * m.g - m.f * m.f,
        };
        let a_fd = metric_geodesic_curvature(&ff, &derivs);
        let a_jet = metric_geodesic_curvature(&fs.first_form, &fs.derivs);

        let jf = &fs.first_form;
        let pairs = [
            (jf.e, m.e),
            (jf.f, m.f),
            (jf.g, m.g),
            (jf.e_u, e_u),
            (jf.e_v, e_v),
            (jf.f_u, f_u),
            (jf.f_v, f_v),
            (jf.g_u, g_u),
            (jf.g_v, g_v),
            (fs.kappa, kappa),
            (fs.kappa_n, kappa_n),
            (a_jet, a_fd),
        ];
        for (slot, (jet, fd)) in per_quantity.iter_mut().zip(pairs) {
            *slot = slot.max(tol::normalized(jet, fd));
        }
    }
    let (mut worst, mut worst_quantity) = (0.0, QUANTITIES[0]);
    for (name, dev) in QUANTITIES.iter().zip(per_quantity) {
        if dev > worst {
            worst = dev;
            worst_quantity = name;
        }
    }
    Ok(FdReport {
        step,
        per_quantity,
        worst,
        worst_quantity,
        samples: samples.len(),
    })
}
