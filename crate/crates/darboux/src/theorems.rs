//! Residual checkers for the invariance identities of Darboux rectifying
//! curves under isometries and conformal maps.
//!
//! Every checker is a pure function of sampled pushforward data and
//! reports per-sample residuals, auxiliary tracks and a verdict. All
//! residuals are normalized as |l - r| / (1 + |l| + |r|).
//!
//! The checkers operate on the tangential part gamma_tan = lambda T + mu P
//! of the source position vector and on the pushed vector
//! V-bar = lambda T-bar + mu P-bar; for a rectifying curve gamma_tan is
//! the position vector itself. This keeps every identity exact whether or
//! not the fixture is rectifying.
//!
//! Orientation note: with the right-handed conventions used throughout
//! (N = T'/kappa, B = T x N, P = U x T), the binormal component of the
//! tangential part satisfies gamma_tan . B = -(mu / kappa) kappa_n; the
//! binormal checkers verify that form.

use crate::geom::FrameSample;
use crate::jets::Jet2;
use crate::surfmap::PushforwardCurve;
use crate::tol;
use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// A named auxiliary residual series. Tracks with a tolerance gate the
/// verdict; tracks without one are informational.
#[derive(Debug, Clone)]
pub struct Track {
    pub name: &'static str,
    pub max: f64,
    pub tolerance: Option<f64>,
    pub samples: usize,
}

impl Track {
    fn gating(name: &'static str, tolerance: f64) -> Track {
        Track {
            name,
            max: 0.0,
            tolerance: Some(tolerance),
            samples: 0,
        }
    }

    fn info(name: &'static str) -> Track {
        Track {
            name,
            max: 0.0,
            tolerance: None,
            samples: 0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.max = self.max.max(residual);
        self.samples += 1;
    }

    pub fn passed(&self) -> bool {
        match self.tolerance {
            Some(t) => self.samples == 0 || self.max <= t,
            None => true,
        }
    }
}

/// Per-checker report: headline residuals, auxiliary tracks, verdict.
///
/// The verdict passes iff the headline max stays within tolerance over
/// non-skipped samples, every gating track passes, and no more than
/// [`tol::MAX_SKIP_FRACTION`] of the samples were skipped as
/// curvature-degenerate.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub id: &'static str,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub skipped: usize,
    pub total_samples: usize,
    pub verdict: Verdict,
    pub tracks: Vec<Track>,
    pub notes: Vec<String>,
}

fn assemble(
    id: &'static str,
    residuals: Vec<f64>,
    tolerance: f64,
    skipped: usize,
    total_samples: usize,
    tracks: Vec<Track>,
    notes: Vec<String>,
) -> TheoremReport {
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let mean_residual = if residuals.is_empty() {
        0.0
    } else {
        residuals.iter().sum::<f64>() / residuals.len() as f64
    };
    let skip_ok =
        total_samples == 0 || (skipped as f64) <= tol::MAX_SKIP_FRACTION * total_samples as f64;
    let verdict = if max_residual <= tolerance && skip_ok && tracks.iter().all(Track::passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    TheoremReport {
        id,
        residuals,
        max_residual,
        mean_residual,
        tolerance,
        skipped,
        total_samples,
        verdict,
        tracks,
        notes,
    }
}

/// Deterministic generator for the random tangent draws (splitmix64).
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    fn next_symmetric(&mut self) -> f64 {
        let x = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        2.0 * x - 1.0
    }
}

/// Options shared by the checkers.
#[derive(Debug, Clone, Copy)]
pub struct CheckContext {
    /// Normalized residual tolerance for the headline series.
    pub tolerance: f64,
    /// Seed for random tangent coefficient draws.
    pub seed: u64,
    /// Random (a, b) draws per sample, on top of the axis-aligned pair.
    pub draws_per_sample: usize,
}

impl Default for CheckContext {
    fn default() -> CheckContext {
        CheckContext {
            tolerance: tol::CHECKER_DEFAULT,
            seed: 0,
            draws_per_sample: 4,
        }
    }
}

/// The closed-form geodesic curvature of a unit-speed coordinate curve,
/// assembled purely from first-form data and arc-length derivatives
/// (Liouville-style bracket over sqrt(EG - F^2)).
pub fn metric_geodesic_curvature(ff: &crate::geom::FirstForm, d: &crate::geom::CurveDerivs) -> f64 {
    let (e, f, g) = (ff.e, ff.f, ff.g);
    let (u1, v1) = (d.du_ds, d.dv_ds);
    let (u2, v2) = (d.d2u_ds2, d.d2v_ds2);
    let bracket = e * g * (u1 * v2 - u2 * v1)
        + f * f * (u2 * v1 - u1 * v2)
        + u1 * u1 * u1 * (e * (ff.f_u - ff.e_v / 2.0) - f * (ff.e_u / 2.0))
        + u1 * u1 * v1 * (e * ff.g_u - f * ff.e_v - g * ff.e_u / 2.0 + f * (ff.f_u - ff.e_v / 2.0))
        + u1 * v1
            * v1
            * (e * (ff.g_v / 2.0) + f * ff.g_u - f * (ff.f_v - ff.g_u / 2.0) - g * ff.e_v)
        + v1 * v1 * v1 * (f * (ff.g_v / 2.0) - g * (ff.f_v - ff.g_u / 2.0));
    bracket / ff.w2.sqrt()
}

/// The dilation correction entering the conformal normal-component
/// relation: a cubic bracket in the metric and rho rho_u, rho rho_v,
/// prefixed by mu / (kappa sqrt(EG - F^2)). Identically zero for constant
/// dilation.
pub fn dilation_normal_correction(
    ff: &crate::geom::FirstForm,
    rho: Jet2,
    d: &crate::geom::CurveDerivs,
    kappa: f64,
    mu: f64,
) -> f64 {
    let (e, f, g) = (ff.e, ff.f, ff.g);
    let (u1, v1) = (d.du_ds, d.dv_ds);
    let ru = rho.v * rho.du;
    let rv = rho.v * rho.dv;
    let bracket = u1 * u1 * u1 * (e * e * rv - e * f * ru)
        + u1 * u1 * v1 * (3.0 * e * f * rv - e * g * ru - 2.0 * f * f * ru)
        + u1 * v1 * v1 * (2.0 * f * f * rv - 3.0 * f * g * ru + e * g * rv)
        + v1 * v1 * v1 * (f * g * rv - g * g * ru);
    mu / (kappa * ff.w2.sqrt()) * bracket
}

/// Tangential part of the source position vector at sample i.
fn gamma_tan(push: &PushforwardCurve, i: usize) -> Vec3 {
    let s = &push.source[i];
    s.tangent.scale(push.decomposition.lambda[i]) + s.tangent_normal.scale(push.decomposition.mu[i])
}

fn degenerate_pair(s: &FrameSample, b: &FrameSample) -> bool {
    s.kappa < tol::KAPPA_MIN || b.kappa < tol::KAPPA_MIN
}

/// Frame and metric invariants over one sampled curve: orthonormality of
/// both frames, the curvature Pythagoras identity, rotation-angle
/// reconstruction, route agreement for kappa_n / the binormal / the
/// metric geodesic curvature, the six metric-derivative identities and
/// the unit-speed identity.
pub fn check_frame_invariants(samples: &[FrameSample]) -> TheoremReport {
    let mut darboux = Track::gating("darboux-orthonormality", tol::FRAME_ORTHO);
    let mut frenet = Track::gating("frenet-orthonormality", tol::FRAME_ORTHO);
    let mut pythagoras = Track::gating("curvature-pythagoras", tol::CURVATURE_PYTHAGORAS);
    let mut rotation = Track::gating("rotation-reconstruction", tol::FRAME_ROTATION);
    let mut kn_routes = Track::gating("kappa-n-routes", tol::ROUTE_EQUIVALENCE);
    let mut b_routes = Track::gating("binormal-routes", tol::ROUTE_EQUIVALENCE);
    let mut a_route = Track::gating("metric-geodesic-curvature", tol::ROUTE_EQUIVALENCE);
    let mut metric = Track::gating("metric-identities", tol::METRIC_IDENTITY);
    let mut unit_speed = Track::gating("unit-speed-identity", tol::UNIT_SPEED_IDENTITY);
    let mut residuals = Vec::with_capacity(samples.len());
    let mut skipped = 0;
    for fs in samples {
        darboux.record(fs.darboux_orthonormality_residual());
        residuals.push(fs.darboux_orthonormality_residual());
        kn_routes.record(fs.kappa_n_route_residual);
        a_route.record(tol::normalized(
            metric_geodesic_curvature(&fs.first_form, &fs.derivs),
            fs.kappa_g,
        ));
        for r in fs.first_form.metric_identity_residuals(&fs.jets) {
            metric.record(r);
        }
        unit_speed.record(fs.unit_speed_identity_residual());
        if fs.is_degenerate() {
            skipped += 1;
            continue;
        }
        frenet.record(fs.frenet_orthonormality_residual().unwrap());
        pythagoras.record(fs.pythagoras_residual().unwrap());
        rotation.record(fs.rotation_residual().unwrap());
        b_routes.record(fs.binormal_route_residual);
    }
    let notes = if skipped > 0 {
        vec![format!(
            "{skipped} curvature-degenerate samples excluded from Frenet tracks"
        )]
    } else {
        Vec::new()
    };
    assemble(
        "frame-invariants",
        residuals,
        tol::FRAME_ORTHO,
        skipped,
        samples.len(),
        vec![
            darboux, frenet, pythagoras, rotation, kn_routes, b_routes, a_route, metric, unit_speed,
        ],
        notes,
    )
}

/// Rectifying transfer (isometry or conformal): the pushed vector must
/// read back the source coefficients against the barred Darboux frame,
/// and its U-bar component must vanish. The strict reading — whether the
/// barred position vector itself lies in the barred rectifying plane — is
/// recorded informationally.
pub fn check_rectifying_transfer(
    id: &'static str,
    push: &PushforwardCurve,
    ctx: &CheckContext,
) -> TheoremReport {
    let mut residuals = Vec::with_capacity(push.source.len());
    let mut strict = Track::info("strict-position-reading");
    let mut max_pos = 0.0_f64;
    for i in 0..push.source.len() {
        let b = &push.barred[i];
        let vbar = push.pushed[i];
        let r = (vbar.dot(b.tangent) - push.decomposition.lambda[i]).abs()
            + (vbar.dot(b.tangent_normal) - push.decomposition.mu[i]).abs()
            + vbar.dot(b.surface_normal).abs();
        residuals.push(r);
        let pos = b.point.dot(b.surface_normal).abs();
        strict.record(pos);
        max_pos = max_pos.max(b.point.norm());
    }
    let strict_tol = tol::RECTIFYING_BASE * (1.0 + max_pos);
    let strict_verdict = if strict.max <= strict_tol {
        "holds"
    } else {
        "fails"
    };
    let notes = vec![format!(
        "strict position reading {strict_verdict}: max |pos . U-bar| = {:.3e} against {:.3e}",
        strict.max, strict_tol
    )];
    assemble(
        id,
        residuals,
        ctx.tolerance,
        0,
        push.source.len(),
        vec![strict],
        notes,
    )
}

/// Draw tangent coefficients: the two axis directions plus seeded random
/// pairs in [-1, 1)^2.
fn tangent_draws(ctx: &CheckContext, sample_index: usize, n_random: usize) -> Vec<(f64, f64)> {
    let mut draws = vec![(1.0, 0.0), (0.0, 1.0)];
    let mut rng = SplitMix64::new(ctx.seed ^ (sample_index as u64).wrapping_mul(0x9e37_79b9));
    for _ in 0..n_random {
        draws.push((rng.next_symmetric(), rng.next_symmetric()));
    }
    draws
}

/// Isometry invariance of the tangential component: for any tangent
/// coefficients (a, b), gamma_tan . (a eta_u + b eta_v) equals
/// V-bar . (a eta-bar_u + b eta-bar_v).
pub fn check_tangent_invariance(push: &PushforwardCurve, ctx: &CheckContext) -> TheoremReport {
    let mut residuals = Vec::with_capacity(push.source.len());
    for i in 0..push.source.len() {
        let s = &push.source[i];
        let b = &push.barred[i];
        let gt = gamma_tan(push, i);
        let vbar = push.pushed[i];
        let mut worst = 0.0_f64;
        for (a, c) in tangent_draws(ctx, i, ctx.draws_per_sample) {
            let x = s.jets.eta_u.scale(a) + s.jets.eta_v.scale(c);
            let xbar = b.jets.eta_u.scale(a) + b.jets.eta_v.scale(c);
            worst = worst.max(tol::normalized(gt.dot(x), vbar.dot(xbar)));
        }
        residuals.push(worst);
    }
    assemble(
        "tangent-invariance",
        residuals,
        ctx.tolerance,
        0,
        push.source.len(),
        Vec::new(),
        Vec::new(),
    )
}

/// Conformal scaling of the tangential component: the full pushforward of
/// gamma_tan is rho V-bar, and its pairing with a pushed tangent vector
/// picks up the squared dilation.
pub fn check_conformal_tangent_scaling(
    push: &PushforwardCurve,
    ctx: &CheckContext,
) -> TheoremReport {
    let mut residuals = Vec::with_capacity(push.source.len());
    for i in 0..push.source.len() {
        let s = &push.source[i];
        let b = &push.barred[i];
        let gt = gamma_tan(push, i);
        let vbar = push.pushed[i];
        let rho = push.rho2[i].sqrt();
        let mut worst = 0.0_f64;
        for (a, c) in tangent_draws(ctx, i, ctx.draws_per_sample) {
            let x = s.jets.eta_u.scale(a) + s.jets.eta_v.scale(c);
            let xbar = b.jets.eta_u.scale(a) + b.jets.eta_v.scale(c);
            worst = worst.max(tol::normalized(
                rho * vbar.dot(xbar),
                push.rho2[i] * gt.dot(x),
            ));
        }
        residuals.push(worst);
    }
    assemble(
        "conformal-tangent-scaling",
        residuals,
        ctx.tolerance,
        0,
        push.source.len(),
        Vec::new(),
        Vec::new(),
    )
}

/// Isometry relation for the normal component:
/// V-bar . N-bar - gamma_tan . N = mu A (1/kappa-bar - 1/kappa), checked
/// together with its unconditional form
/// kappa (gamma_tan . N) = mu A = kappa-bar (V-bar . N-bar).
/// Samples with equal curvatures feed the equal-curvature gate
/// (the normal component must then be invariant outright).
pub fn check_normal_component(push: &PushforwardCurve, ctx: &CheckContext) -> TheoremReport {
    let mut residuals = Vec::new();
    let mut relation = Track::gating("difference-relation", ctx.tolerance);
    let mut unconditional = Track::gating("unconditional-form", ctx.tolerance);
    let mut gate = Track::gating("equal-curvature-gate", tol::COROLLARY_GATE);
    let mut skipped = 0;
    for i in 0..push.source.len() {
        let s = &push.source[i];
        let b = &push.barred[i];
        if degenerate_pair(s, b) {
            skipped += 1;
            continue;
        }
        let mu = push.decomposition.mu[i];
        let a_val = metric_geodesic_curvature(&s.first_form, &s.derivs);
        let gn = gamma_tan(push, i).dot(s.normal.expect("non-degenerate"));
        let vn = push.pushed[i].dot(b.normal.expect("non-degenerate"));
        let r_rel = tol::normalized(vn - gn, mu * a_val * (1.0 / b.kappa - 1.0 / s.kappa));
        let r_unc = tol::normalized(s.kappa * gn, mu * a_val)
            .max(tol::normalized(b.kappa * vn, mu * a_val));
        relation.record(r_rel);
        unconditional.record(r_unc);
        residuals.push(r_rel.max(r_unc));
        if (s.kappa - b.kappa).abs() <= tol::COROLLARY_WINDOW {
            gate.record((vn - gn).abs());
        }
    }
    let notes = vec![format!(
        "equal-curvature gate saw {} of {} samples",
        gate.samples,
        push.source.len()
    )];
    assemble(
        "normal-component",
        residuals,
        ctx.tolerance,
        skipped,
        push.source.len(),
        vec![relation, unconditional, gate],
        notes,
    )
}

/// Isometry relation for the binormal component, in the orientation
/// dictated by B = T x N:
/// sub-check (i), per surface: gamma_tan . B = -(mu / kappa) kappa_n;
/// sub-check (ii), transfer:
/// (V-bar . B-bar - gamma_tan . B) = -mu (kappa_n-bar/kappa-bar - kappa_n/kappa).
/// Samples with equal normal-curvature ratios feed the equal-ratio gate.
pub fn check_binormal_component(push: &PushforwardCurve, ctx: &CheckContext) -> TheoremReport {
    let mut residuals = Vec::new();
    let mut per_surface = Track::gating("per-surface-identity", ctx.tolerance);
    let mut difference = Track::gating("difference-relation", ctx.tolerance);
    let mut gate = Track::gating("equal-ratio-gate", tol::COROLLARY_GATE);
    let mut skipped = 0;
    for i in 0..push.source.len() {
        let s = &push.source[i];
        let b = &push.barred[i];
        if degenerate_pair(s, b) {
            skipped += 1;
            continue;
        }
        let mu = push.decomposition.mu[i];
        let gb = gamma_tan(push, i).dot(s.binormal.expect("non-degenerate"));
        let vb = push.pushed[i].dot(b.binormal.expect("non-degenerate"));
        let ratio_s = s.kappa_n / s.kappa;
        let ratio_b = b.kappa_n / b.kappa;
        let r_i = tol::normalized(gb, -mu * ratio_s).max(tol::normalized(vb, -mu * ratio_b));
        let r_ii = tol::normalized(vb - gb, -mu * (ratio_b - ratio_s));
        per_surface.record(r_i);
        difference.record(r_ii);
        residuals.push(r_i.max(r_ii));
        if (ratio_s - ratio_b).abs() <= tol::COROLLARY_WINDOW {
            gate.record((vb - gb).abs());
        }
    }
    let notes = vec![
        "orientation: B = T x N gives gamma_tan . B = -(mu kappa_n / kappa)".to_string(),
        format!(
            "equal-ratio gate saw {} of {} samples",
            gate.samples,
            push.source.len()
        ),
    ];
    assemble(
        "binormal-component",
        residuals,
        ctx.tolerance,
        skipped,
        push.source.len(),
        vec![per_surface, difference, gate],
        notes,
    )
}

/// Conformal relation for the normal component, in unconditional form:
/// kappa (rho^2 gamma_tan . N - psi) = rho^3 kappa-bar (V-bar . N-bar),
/// where psi is the dilation correction. The equal-curvature stated form
/// rho^2 gamma_tan . N - rho^3 V-bar . N-bar = psi runs opportunistically
/// on samples with kappa = kappa-bar.
pub fn check_conformal_normal_component(
    push: &PushforwardCurve,
    ctx: &CheckContext,
) -> TheoremReport {
    let mut residuals = Vec::new();
    let mut stated = Track::gating("equal-curvature-stated-form", ctx.tolerance);
    let mut psi_mag = Track::info("psi-magnitude");
    let mut skipped = 0;
    for i in 0..push.source.len() {
        let s = &push.source[i];
        let b = &push.barred[i];
        if degenerate_pair(s, b) {
            skipped += 1;
            continue;
        }
        let mu = push.decomposition.mu[i];
        let rho2 = push.rho2[i];
        let rho3 = rho2 * rho2.sqrt();
        let psi =
            dilation_normal_correction(&s.first_form, push.rho_jets[i], &s.derivs, s.kappa, mu);
        psi_mag.record(psi.abs());
        let gn = gamma_tan(push, i).dot(s.normal.expect("non-degenerate"));
        let vn = push.pushed[i].dot(b.normal.expect("non-degenerate"));
        let r = tol::normalized(s.kappa * (rho2 * gn - psi), rho3 * b.kappa * vn);
        residuals.push(r);
        if (s.kappa - b.kappa).abs() <= tol::COROLLARY_WINDOW {
            stated.record(tol::normalized(rho2 * gn - rho3 * vn, psi));
        }
    }
    let notes = vec![format!(
        "equal-curvature stated form ran on {} of {} samples",
        stated.samples,
        push.source.len()
    )];
    assemble(
        "conformal-normal-component",
        residuals,
        ctx.tolerance,
        skipped,
        push.source.len(),
        vec![stated, psi_mag],
        notes,
    )
}

/// Binormal component under a conformal map between Monge patches.
///
/// The verdict is keyed to the per-surface identities
/// gamma_tan . B = -(mu/kappa) kappa_n on both sides, which hold in any
/// chart. The displayed height-function relation is evaluated in two
/// variants — denominators W^2 = 1 + f_u^2 + f_v^2 ("literal") and
/// W = sqrt(1 + f_u^2 + f_v^2) ("standard") — and recorded
/// informationally, together with an orientation-corrected exact form.
pub fn check_monge_binormal(push: &PushforwardCurve, ctx: &CheckContext) -> TheoremReport {
    let mut residuals = Vec::new();
    let mut literal = Track::info("height-relation-literal");
    let mut standard = Track::info("height-relation-standard");
    let mut variant_gap = Track::info("literal-vs-standard-gap");
    let mut corrected = Track::gating("orientation-corrected-standard", ctx.tolerance);
    let mut skipped = 0;
    for i in 0..push.source.len() {
        let s = &push.source[i];
        let b = &push.barred[i];
        if degenerate_pair(s, b) {
            skipped += 1;
            continue;
        }
        let mu = push.decomposition.mu[i];
        let rho2 = push.rho2[i];
        let gb = gamma_tan(push, i).dot(s.binormal.expect("non-degenerate"));
        let vb = push.pushed[i].dot(b.binormal.expect("non-degenerate"));
        let r_key = tol::normalized(gb, -mu * s.kappa_n / s.kappa)
            .max(tol::normalized(vb, -mu * b.kappa_n / b.kappa));
        residuals.push(r_key);

        // Height-function data: for a Monge patch the z-jet is the
        // height function.
        let (u1, v1) = (s.derivs.du_ds, s.derivs.dv_ds);
        let fz = s.jets.zj;
        let gz = b.jets.zj;
        let w2 = 1.0 + fz.du * fz.du + fz.dv * fz.dv;
        let w2b = 1.0 + gz.du * gz.du + gz.dv * gz.dv;
        let lhs = vb - rho2 * gb;
        let contraction =
            |fuu: f64, fuv: f64, fvv: f64, d: f64, buu: f64, buv: f64, bvv: f64, db: f64| {
                u1 * u1 * (buu / db - rho2 * fuu / d)
                    + 2.0 * u1 * v1 * (buv / db - rho2 * fuv / d)
                    + v1 * v1 * (bvv / db - rho2 * fvv / d)
            };
        let rhs_literal =
            mu / s.kappa * contraction(fz.duu, fz.duv, fz.dvv, w2, gz.duu, gz.duv, gz.dvv, w2b);
        let rhs_standard = mu / s.kappa
            * contraction(
                fz.duu,
                fz.duv,
                fz.dvv,
                w2.sqrt(),
                gz.duu,
                gz.duv,
                gz.dvv,
                w2b.sqrt(),
            );
        literal.record(tol::normalized(lhs, rhs_literal));
        standard.record(tol::normalized(lhs, rhs_standard));
        variant_gap.record((rhs_literal - rhs_standard).abs());

        // Exact form with honest barred arc length and frame orientation:
        // V-bar.B-bar - rho^2 gamma_tan.B
        //   = -mu [ cbar / (rho^2 kappa-bar W-bar) - rho^2 c / (kappa W) ]
        // with c, cbar the height-Hessian contractions in source primes.
        let c_src = fz.duu * u1 * u1 + 2.0 * fz.duv * u1 * v1 + fz.dvv * v1 * v1;
        let c_bar = gz.duu * u1 * u1 + 2.0 * gz.duv * u1 * v1 + gz.dvv * v1 * v1;
        let rhs_corrected =
            -mu * (c_bar / (rho2 * b.kappa * w2b.sqrt()) - rho2 * c_src / (s.kappa * w2.sqrt()));
        corrected.record(tol::normalized(lhs, rhs_corrected));
    }
    let notes = vec![
        "displayed height relation recorded informationally in both denominator variants"
            .to_string(),
        format!("max literal-vs-standard gap: {:.3e}", variant_gap.max),
    ];
    assemble(
        "monge-binormal",
        residuals,
        ctx.tolerance,
        skipped,
        push.source.len(),
        vec![literal, standard, variant_gap, corrected],
        notes,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{sample_curve, CurveOnSurface, Parametrization, SurfacePatch};
    use crate::surfmap::{pushforward_curve, SurfaceCorrespondence};
    use approx::assert_relative_eq;

    fn plane() -> SurfacePatch {
        SurfacePatch::parse("u", "v", "0", (-2.0, 2.0), (-2.0, 2.0)).unwrap()
    }

    fn unit_circle() -> CurveOnSurface {
        CurveOnSurface::parse(
            "cos(t)",
            "sin(t)",
            (0.0, std::f64::consts::TAU),
            Parametrization::AssertUnitSpeed,
        )
        .unwrap()
    }

    #[test]
    fn plane_circle_geodesic_curvature_is_one() {
        let samples = sample_curve(&plane(), &unit_circle(), 16).unwrap();
        for fs in &samples {
            let a = metric_geodesic_curvature(&fs.first_form, &fs.derivs);
            assert_relative_eq!(a, 1.0, epsilon = 1e-10);
            assert_relative_eq!(a, fs.kappa_g, epsilon = 1e-10);
        }
    }

    #[test]
    fn constant_dilation_kills_the_correction() {
        let samples = sample_curve(&plane(), &unit_circle(), 8).unwrap();
        let rho = Jet2::new(2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1);
        for fs in &samples {
            let psi = dilation_normal_correction(&fs.first_form, rho, &fs.derivs, fs.kappa, -1.0);
            assert_eq!(psi, 0.0);
        }
    }

    #[test]
    fn identity_correspondence_passes_everything() {
        let corr = SurfaceCorrespondence {
            source: plane(),
            target: plane(),
            dilation: None,
        };
        let push = pushforward_curve(&corr, &unit_circle(), 16).unwrap();
        let ctx = CheckContext::default();
        for report in [
            check_rectifying_transfer(
                "rectifying-transfer",
                &push,
                &CheckContext {
                    tolerance: tol::COEFF_PRESERVATION,
                    ..ctx
                },
            ),
            check_tangent_invariance(&push, &ctx),
            check_normal_component(&push, &ctx),
            check_binormal_component(&push, &ctx),
            check_conformal_tangent_scaling(&push, &ctx),
            check_conformal_normal_component(&push, &ctx),
            check_frame_invariants(&push.source),
        ] {
            assert!(
                report.verdict.passed(),
                "{} failed: max {:e}, tracks {:?}",
                report.id,
                report.max_residual,
                report.tracks
            );
        }
    }

    #[test]
    fn checkers_are_deterministic_for_a_seed() {
        // Distinct isometric patches give nonzero rounding-level residuals
        // that depend on the drawn tangent coefficients.
        let helicoid = SurfacePatch::parse(
            "sinh(v)*cos(u)",
            "sinh(v)*sin(u)",
            "u",
            (-2.5, 2.5),
            (-1.2, 1.2),
        )
        .unwrap();
        let catenoid = SurfacePatch::parse(
            "cosh(v)*cos(u)",
            "cosh(v)*sin(u)",
            "v",
            (-2.5, 2.5),
            (-1.2, 1.2),
        )
        .unwrap();
        let corr = SurfaceCorrespondence {
            source: helicoid,
            target: catenoid,
            dilation: None,
        };
        let line =
            CurveOnSurface::parse("t", "0.3", (-2.0, 2.0), Parametrization::Reparametrize).unwrap();
        let push = pushforward_curve(&corr, &line, 12).unwrap();
        let ctx = CheckContext {
            seed: 42,
            ..CheckContext::default()
        };
        let a = check_tangent_invariance(&push, &ctx);
        let b = check_tangent_invariance(&push, &ctx);
        assert_eq!(a.residuals, b.residuals);
        let other = check_tangent_invariance(&push, &CheckContext { seed: 43, ..ctx });
        assert_ne!(a.residuals, other.residuals);
    }

    #[test]
    fn skip_fraction_fails_the_verdict() {
        // A straight line is curvature-degenerate everywhere: every sample
        // is skipped and the verdict must fail on the skip rule.
        let line =
            CurveOnSurface::parse("t", "0", (-1.0, 1.0), Parametrization::AssertUnitSpeed).unwrap();
        let corr = SurfaceCorrespondence {
            source: plane(),
            target: plane(),
            dilation: None,
        };
        let push = pushforward_curve(&corr, &line, 8).unwrap();
        let report = check_normal_component(&push, &CheckContext::default());
        assert_eq!(report.skipped, 8);
        assert!(!report.verdict.passed());
    }
}
