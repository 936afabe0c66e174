//! Checker tests on the fixture pairs: identity maps, the rolled plane,
//! the helicoid/catenoid isometry, homotheties, the stereographic
//! conformal pair and the reflected Monge paraboloid.

mod common;

use approx::assert_relative_eq;
use common::*;
use darboux::expr::parse;
use darboux::geom::sample_curve;
use darboux::surfmap::{
    classify_map, conformal_partial_check, pushforward_curve, MapKind, SurfaceCorrespondence,
};
use darboux::theorems::*;
use darboux::tol;

fn ctx() -> CheckContext {
    CheckContext::default()
}

fn coeff_ctx() -> CheckContext {
    CheckContext {
        tolerance: tol::COEFF_PRESERVATION,
        ..CheckContext::default()
    }
}

#[test]
fn cone_identity_passes_all_checkers_with_active_gates() {
    let corr = SurfaceCorrespondence {
        source: cone(),
        target: cone(),
        dilation: None,
    };
    assert_eq!(
        classify_map(&corr, (9, 9), None).unwrap().kind,
        MapKind::Isometry
    );
    let push = pushforward_curve(&corr, &cone_wave(), 16).unwrap();

    let t31 = check_rectifying_transfer("rectifying-transfer", &push, &coeff_ctx());
    assert!(t31.verdict.passed());
    assert!(
        t31.notes[0].contains("holds"),
        "cone keeps its apex at the origin: {:?}",
        t31.notes
    );

    let t33 = check_normal_component(&push, &ctx());
    assert!(t33.verdict.passed(), "{:?}", t33.tracks);
    let gate = t33
        .tracks
        .iter()
        .find(|t| t.name == "equal-curvature-gate")
        .unwrap();
    assert_eq!(
        gate.samples, 16,
        "identity correspondence gates every sample"
    );
    assert!(gate.max <= 1e-9);

    let t34 = check_binormal_component(&push, &ctx());
    assert!(t34.verdict.passed(), "{:?}", t34.tracks);
    let gate = t34
        .tracks
        .iter()
        .find(|t| t.name == "equal-ratio-gate")
        .unwrap();
    assert_eq!(gate.samples, 16);
    assert!(gate.max <= 1e-9);

    assert!(check_tangent_invariance(&push, &ctx()).verdict.passed());
    assert!(check_conformal_tangent_scaling(&push, &ctx())
        .verdict
        .passed());
    assert!(check_conformal_normal_component(&push, &ctx())
        .verdict
        .passed());
}

#[test]
fn rolled_plane_to_cylinder_transfer() {
    let corr = SurfaceCorrespondence {
        source: matching_plane(),
        target: cylinder(),
        dilation: None,
    };
    let class = classify_map(&corr, (9, 9), None).unwrap();
    assert_eq!(class.kind, MapKind::Isometry);
    assert!(class.max_conformal_residual <= 1e-9);

    let push = pushforward_curve(&corr, &unit_circle_reparam(), 16).unwrap();

    // Rolling the plane onto the cylinder moves the position vector out of
    // the tangent plane: coefficient preservation holds, the strict
    // position reading must fail with witness about 1.
    let t31 = check_rectifying_transfer("rectifying-transfer", &push, &coeff_ctx());
    assert!(t31.verdict.passed(), "max {:e}", t31.max_residual);
    let strict = t31
        .tracks
        .iter()
        .find(|t| t.name == "strict-position-reading")
        .unwrap();
    assert!((strict.max - 1.0).abs() <= 1e-9, "witness {:e}", strict.max);
    assert!(t31.notes[0].contains("fails"));

    // Curvatures genuinely differ, making the difference relation nontrivial.
    let t33 = check_normal_component(&push, &ctx());
    assert!(t33.verdict.passed(), "{:?}", t33.tracks);
    let distinct = push
        .source
        .iter()
        .zip(&push.barred)
        .any(|(s, b)| (s.kappa - b.kappa).abs() > 1e-3);
    assert!(distinct, "fixture should exercise kappa != kappa-bar");

    let t34 = check_binormal_component(&push, &ctx());
    assert!(t34.verdict.passed(), "{:?}", t34.tracks);

    assert!(check_tangent_invariance(&push, &ctx()).verdict.passed());
}

// A plane sharing the cylinder's domain, so the correspondence is over
// one chart.
fn matching_plane() -> darboux::geom::SurfacePatch {
    darboux::geom::SurfacePatch::parse("u", "v", "0", (-1.5, 7.0), (-3.4, 3.4)).unwrap()
}

fn unit_circle_reparam() -> darboux::geom::CurveOnSurface {
    darboux::geom::CurveOnSurface::parse(
        "cos(t)",
        "sin(t)",
        (0.0, TAU),
        darboux::geom::Parametrization::Reparametrize,
    )
    .unwrap()
}

#[test]
fn helicoid_catenoid_component_invariance() {
    let corr = SurfaceCorrespondence {
        source: helicoid(),
        target: catenoid(),
        dilation: None,
    };
    let class = classify_map(&corr, (9, 9), None).unwrap();
    assert_eq!(class.kind, MapKind::Isometry);
    assert!(class.max_conformal_residual <= 1e-9);

    let push = pushforward_curve(&corr, &coordinate_line(), 16).unwrap();

    // 16 samples x (2 axis + 2 random) = 64 draws.
    let ctx64 = CheckContext {
        draws_per_sample: 2,
        tolerance: 1e-8,
        seed: 7,
    };
    let t32 = check_tangent_invariance(&push, &ctx64);
    assert!(t32.verdict.passed(), "max {:e}", t32.max_residual);

    let t33 = check_normal_component(&push, &ctx());
    assert!(t33.verdict.passed(), "{:?}", t33.tracks);
    let unc = t33
        .tracks
        .iter()
        .find(|t| t.name == "unconditional-form")
        .unwrap();
    assert!(unc.max <= 1e-8);

    let t34 = check_binormal_component(&push, &ctx());
    assert!(t34.verdict.passed(), "{:?}", t34.tracks);

    let partials = conformal_partial_check(&corr, (9, 9)).unwrap();
    assert!(
        partials.max_residual <= 1e-9,
        "partial transfer {:e}",
        partials.max_residual
    );
}

#[test]
fn conformal_checkers_collapse_to_isometry_checkers() {
    // On an isometry fixture the conformal forms must reproduce the
    // isometry forms' residuals to within 1e-10 (rho = 1, psi = 0).
    let corr = SurfaceCorrespondence {
        source: helicoid(),
        target: catenoid(),
        dilation: None,
    };
    let push = pushforward_curve(&corr, &coordinate_line(), 16).unwrap();
    let c = ctx();
    let t32 = check_tangent_invariance(&push, &c);
    let t42 = check_conformal_tangent_scaling(&push, &c);
    for (a, b) in t32.residuals.iter().zip(&t42.residuals) {
        assert!((a - b).abs() <= 1e-10);
    }
    let t33 = check_normal_component(&push, &c);
    let t43 = check_conformal_normal_component(&push, &c);
    assert!(t33.verdict.passed() && t43.verdict.passed());
    assert!((t33.max_residual - t43.max_residual).abs() <= 1e-8);
    let psi = t43
        .tracks
        .iter()
        .find(|t| t.name == "psi-magnitude")
        .unwrap();
    assert!(
        psi.max <= 1e-12,
        "estimated dilation is 1, psi must vanish: {:e}",
        psi.max
    );
}

#[test]
fn homothety_cone_scaling() {
    let cone2 = darboux::geom::SurfacePatch::parse(
        "2*v*cos(u)",
        "2*v*sin(u)",
        "2*v",
        (-0.5, 7.0),
        (0.4, 2.5),
    )
    .unwrap();
    let corr = SurfaceCorrespondence {
        source: cone(),
        target: cone2,
        dilation: Some(parse("2", &["u", "v"]).unwrap()),
    };
    let class = classify_map(&corr, (9, 9), None).unwrap();
    assert_eq!(class.kind, MapKind::Homothety);
    assert_relative_eq!(class.c2, 4.0, epsilon = 1e-10);

    let push = pushforward_curve(&corr, &cone_wave(), 16).unwrap();
    for rho2 in &push.rho2 {
        assert_relative_eq!(*rho2, 4.0, epsilon = 1e-12);
    }

    let t41 = check_rectifying_transfer("conformal-rectifying-transfer", &push, &coeff_ctx());
    assert!(t41.verdict.passed(), "max {:e}", t41.max_residual);
    assert!(
        t41.notes[0].contains("holds"),
        "scaled cone keeps its apex: {:?}",
        t41.notes
    );

    let t42 = check_conformal_tangent_scaling(&push, &ctx());
    assert!(t42.verdict.passed(), "max {:e}", t42.max_residual);

    let t43 = check_conformal_normal_component(&push, &ctx());
    assert!(t43.verdict.passed(), "{:?}", t43.tracks);
    let psi = t43
        .tracks
        .iter()
        .find(|t| t.name == "psi-magnitude")
        .unwrap();
    assert!(psi.max <= 1e-12, "constant dilation, psi = 0");

    let partials = conformal_partial_check(&corr, (9, 9)).unwrap();
    assert!(partials.max_residual <= 1e-10);
}

#[test]
fn triple_homothety_transfer() {
    let cone3 = darboux::geom::SurfacePatch::parse(
        "3*v*cos(u)",
        "3*v*sin(u)",
        "3*v",
        (-0.5, 7.0),
        (0.4, 2.5),
    )
    .unwrap();
    let corr = SurfaceCorrespondence {
        source: cone(),
        target: cone3,
        dilation: None,
    };
    let push = pushforward_curve(&corr, &cone_wave(), 12).unwrap();
    let t41 = check_rectifying_transfer("conformal-rectifying-transfer", &push, &coeff_ctx());
    assert!(t41.verdict.passed());
    assert!(t41.notes[0].contains("holds"));
}

#[test]
fn stereographic_pair_conformal_checks() {
    let corr = SurfaceCorrespondence {
        source: small_plane(),
        target: stereo_sphere(),
        dilation: Some(parse("2/(1+u^2+v^2)", &["u", "v"]).unwrap()),
    };
    let class = classify_map(&corr, (9, 9), None).unwrap();
    assert_eq!(class.kind, MapKind::Conformal);
    for ((u, v), rho2) in &class.rho2_samples {
        let denom = 1.0 + u * u + v * v;
        assert!((rho2 - 4.0 / (denom * denom)).abs() <= 1e-8);
    }

    let partials = conformal_partial_check(&corr, (9, 9)).unwrap();
    assert!(
        partials.max_residual <= 1e-7,
        "partial transfer {:e}",
        partials.max_residual
    );

    let push = pushforward_curve(&corr, &parameter_circle(0.5), 16).unwrap();

    let t41 = check_rectifying_transfer("conformal-rectifying-transfer", &push, &coeff_ctx());
    assert!(t41.verdict.passed());
    // The stereographic image sits on the origin-centered unit sphere, so
    // the strict position reading fails with witness about 1.
    let strict = t41
        .tracks
        .iter()
        .find(|t| t.name == "strict-position-reading")
        .unwrap();
    assert!((strict.max - 1.0).abs() <= 1e-9);
    assert!(t41.notes[0].contains("fails"));

    let t42 = check_conformal_tangent_scaling(&push, &ctx());
    assert!(t42.verdict.passed(), "max {:e}", t42.max_residual);

    let t43 = check_conformal_normal_component(
        &push,
        &CheckContext {
            tolerance: 1e-6,
            ..ctx()
        },
    );
    assert!(
        t43.verdict.passed(),
        "max {:e}, tracks {:?}",
        t43.max_residual,
        t43.tracks
    );
    let psi = t43
        .tracks
        .iter()
        .find(|t| t.name == "psi-magnitude")
        .unwrap();
    assert!(psi.max > 1e-3, "genuinely varying dilation: {:e}", psi.max);
}

#[test]
fn dilation_correction_matches_brute_force_recomputation() {
    // Reassemble the correction bracket from finite differences of the
    // plain evaluator: E, F, G by FD of the embedding, rho and its
    // gradient by FD of the declared expression.
    let plane = small_plane();
    let rho_expr = parse("2/(1+u^2+v^2)", &["u", "v"]).unwrap();
    let corr = SurfaceCorrespondence {
        source: plane.clone(),
        target: stereo_sphere(),
        dilation: Some(rho_expr.clone()),
    };
    let push = pushforward_curve(&corr, &parameter_circle(0.5), 12).unwrap();
    let h = 1e-5;
    for (i, fs) in push.source.iter().enumerate() {
        let mu = push.decomposition.mu[i];
        let psi_jet =
            dilation_normal_correction(&fs.first_form, push.rho_jets[i], &fs.derivs, fs.kappa, mu);
        let (u0, v0) = (fs.u, fs.v);
        let pos = |u: f64, v: f64| plane.position(u, v).unwrap();
        let eu = |u: f64, v: f64| (pos(u + h, v) - pos(u - h, v)).scale(0.5 / h);
        let ev = |u: f64, v: f64| (pos(u, v + h) - pos(u, v - h)).scale(0.5 / h);
        let e = eu(u0, v0).dot(eu(u0, v0));
        let f = eu(u0, v0).dot(ev(u0, v0));
        let g = ev(u0, v0).dot(ev(u0, v0));
        let rho = |u: f64, v: f64| rho_expr.eval_f64(&[u, v]).unwrap();
        let r = rho(u0, v0);
        let r_u = fd1(|u| rho(u, v0), u0, h);
        let r_v = fd1(|v| rho(u0, v), v0, h);
        let (u1, v1) = (fs.derivs.du_ds, fs.derivs.dv_ds);
        let bracket = u1.powi(3) * (e * e * r * r_v - e * f * r * r_u)
            + u1 * u1 * v1 * (3.0 * e * f * r * r_v - e * g * r * r_u - 2.0 * f * f * r * r_u)
            + u1 * v1 * v1 * (2.0 * f * f * r * r_v - 3.0 * f * g * r * r_u + e * g * r * r_v)
            + v1.powi(3) * (f * g * r * r_v - g * g * r * r_u);
        let psi_fd = mu / (fs.kappa * (e * g - f * f).sqrt()) * bracket;
        assert!(
            (psi_jet - psi_fd).abs() <= 1e-6 * (1.0 + psi_jet.abs()),
            "sample {i}: {psi_jet} vs {psi_fd}"
        );
    }
}

#[test]
fn dilation_correction_zero_f_specialization() {
    // Every fixture here has F = 0, where the bracket collapses to four
    // terms; evaluate that reduced form independently.
    let corr = SurfaceCorrespondence {
        source: small_plane(),
        target: stereo_sphere(),
        dilation: Some(parse("2/(1+u^2+v^2)", &["u", "v"]).unwrap()),
    };
    let push = pushforward_curve(&corr, &parameter_circle(0.5), 12).unwrap();
    for (i, fs) in push.source.iter().enumerate() {
        let mu = push.decomposition.mu[i];
        let rho = push.rho_jets[i];
        let full = dilation_normal_correction(&fs.first_form, rho, &fs.derivs, fs.kappa, mu);
        let ff = &fs.first_form;
        assert!(ff.f.abs() <= 1e-12);
        let (u1, v1) = (fs.derivs.du_ds, fs.derivs.dv_ds);
        let (ru, rv) = (rho.v * rho.du, rho.v * rho.dv);
        let reduced = mu / (fs.kappa * (ff.e * ff.g).sqrt())
            * (u1.powi(3) * ff.e * ff.e * rv - u1 * u1 * v1 * ff.e * ff.g * ru
                + u1 * v1 * v1 * ff.e * ff.g * rv
                - v1.powi(3) * ff.g * ff.g * ru);
        assert!((full - reduced).abs() <= 1e-12 * (1.0 + full.abs()));
    }
}

#[test]
fn reflected_paraboloid_monge_checks() {
    let corr = SurfaceCorrespondence {
        source: paraboloid(),
        target: paraboloid_reflected(),
        dilation: None,
    };
    assert!(corr.source.is_monge() && corr.target.is_monge());
    let class = classify_map(&corr, (9, 9), None).unwrap();
    assert_eq!(class.kind, MapKind::Isometry);

    let push = pushforward_curve(&corr, &parameter_circle(0.7), 16).unwrap();
    let t44 = check_monge_binormal(&push, &ctx());
    assert!(t44.verdict.passed(), "{:?}", t44.tracks);
    let gap = t44
        .tracks
        .iter()
        .find(|t| t.name == "literal-vs-standard-gap")
        .unwrap();
    assert!(
        gap.max > 1e-3,
        "variant disagreement should be visible: {:e}",
        gap.max
    );
    let corrected = t44
        .tracks
        .iter()
        .find(|t| t.name == "orientation-corrected-standard")
        .unwrap();
    assert!(
        corrected.max <= 1e-9,
        "exact corrected form: {:e}",
        corrected.max
    );

    // Reflection keeps curvature pointwise, so the equal-curvature gate is
    // busy; the normal component is invariant outright.
    let t33 = check_normal_component(&push, &ctx());
    assert!(t33.verdict.passed(), "{:?}", t33.tracks);
    let gate = t33
        .tracks
        .iter()
        .find(|t| t.name == "equal-curvature-gate")
        .unwrap();
    assert_eq!(gate.samples, 16);

    // The normal-curvature ratios flip sign, so the equal-ratio gate is idle.
    let t34 = check_binormal_component(&push, &ctx());
    assert!(t34.verdict.passed(), "{:?}", t34.tracks);
    let gate = t34
        .tracks
        .iter()
        .find(|t| t.name == "equal-ratio-gate")
        .unwrap();
    assert_eq!(gate.samples, 0);
}

#[test]
fn flat_monge_patch_is_trivially_zero() {
    let flat = darboux::geom::SurfacePatch::parse("u", "v", "0", (-1.0, 1.0), (-1.0, 1.0)).unwrap();
    let corr = SurfaceCorrespondence {
        source: flat.clone(),
        target: flat,
        dilation: None,
    };
    let push = pushforward_curve(&corr, &parameter_circle(0.7), 8).unwrap();
    let t44 = check_monge_binormal(&push, &ctx());
    assert!(t44.verdict.passed());
    for track in &t44.tracks {
        if track.name != "literal-vs-standard-gap" {
            assert!(track.max <= 1e-12, "{}: {:e}", track.name, track.max);
        }
    }
}

#[test]
fn sphere_fixture_is_not_rectifying() {
    use darboux::rectify::{classify_darboux_rectifying, decompose_position, RectifyingVerdict};
    let samples = sample_curve(&sphere(), &great_circle(), 16).unwrap();
    let d = decompose_position(&samples);
    let c = classify_darboux_rectifying(&d, None).unwrap();
    assert_eq!(c.verdict, RectifyingVerdict::NotRectifying);
    assert!((c.witness_nu - 1.0).abs() <= 1e-9);
}

#[test]
fn cone_and_plane_fixtures_are_rectifying() {
    use darboux::rectify::{classify_darboux_rectifying, decompose_position, RectifyingVerdict};
    for (patch, curve) in [(cone(), cone_wave()), (plane(), unit_circle())] {
        let samples = sample_curve(&patch, &curve, 16).unwrap();
        let d = decompose_position(&samples);
        assert!(d.max_abs_nu <= 1e-9);
        let c = classify_darboux_rectifying(&d, None).unwrap();
        assert_eq!(c.verdict, RectifyingVerdict::Rectifying);
    }
}
