//! Finite-difference oracle tests for the jet evaluator: every derivative
//! the jets claim is compared against central differences of plain-number
//! evaluation, which never touches the jet propagation rules.

mod common;

use common::{assert_close, fd1, fd2, fd3, fd_mixed};
use darboux::expr::parse;
use darboux::jets::{Jet1, Jet2, JetNum};

#[test]
fn quotient_jet_matches_finite_differences() {
    let e = parse("sin(t)/t", &["t"]).unwrap();
    let t0 = 0.7;
    let j = e.eval(&[Jet1::seed(t0, 3)]).unwrap();
    let f = |t: f64| t.sin() / t;
    assert_close(j.value(), f(t0), 1e-12, 1e-12, "value");
    assert_close(j.d1(), fd1(f, t0, 1e-5), 1e-6, 1e-9, "d1");
    assert_close(j.d2(), fd2(f, t0, 1e-5), 1e-6, 1e-7, "d2");
    // Third derivative against the closed form
    // -6 sin t / t^4 + 6 cos t / t^3 + 3 sin t / t^2 - cos t / t.
    let analytic3 =
        -6.0 * t0.sin() / t0.powi(4) + 6.0 * t0.cos() / t0.powi(3) + 3.0 * t0.sin() / t0.powi(2)
            - t0.cos() / t0;
    assert_close(j.d3(), analytic3, 1e-12, 1e-12, "d3 analytic");
    assert_close(j.d3(), fd3(f, t0, 1e-5), 1e-4, 1e-5, "d3 fd");
}

#[test]
fn exp_of_bivariate_matches_finite_differences() {
    let e = parse("exp(u^2 + v)", &["u", "v"]).unwrap();
    let (u0, v0) = (0.3, 0.4);
    let j = e.eval(&[Jet2::seed_u(u0, 2), Jet2::seed_v(v0, 2)]).unwrap();
    let f = |u: f64, v: f64| (u * u + v).exp();
    assert_close(j.v, f(u0, v0), 1e-12, 1e-12, "value");
    assert_close(j.du, fd1(|u| f(u, v0), u0, 1e-5), 1e-6, 1e-9, "du");
    assert_close(j.dv, fd1(|v| f(u0, v), v0, 1e-5), 1e-6, 1e-9, "dv");
    assert_close(j.duu, fd2(|u| f(u, v0), u0, 1e-5), 1e-6, 1e-6, "duu");
    assert_close(j.dvv, fd2(|v| f(u0, v), v0, 1e-5), 1e-6, 1e-6, "dvv");
    assert_close(j.duv, fd_mixed(f, u0, v0, 1e-5), 1e-6, 1e-6, "duv");
}

#[test]
fn log_eval_partials_match_finite_differences() {
    let e = parse("log(1 + u^2 + v^2)", &["u", "v"]).unwrap();
    let (u0, v0) = (0.5, -0.25);
    let j = e.eval(&[Jet2::seed_u(u0, 2), Jet2::seed_v(v0, 2)]).unwrap();
    let f = |u: f64, v: f64| (1.0 + u * u + v * v).ln();
    assert_close(j.du, fd1(|u| f(u, v0), u0, 1e-5), 1e-6, 1e-9, "du");
    assert_close(j.dv, fd1(|v| f(u0, v), v0, 1e-5), 1e-6, 1e-9, "dv");
    assert_close(j.duu, fd2(|u| f(u, v0), u0, 1e-5), 1e-6, 1e-6, "duu");
    assert_close(j.duv, fd_mixed(f, u0, v0, 1e-5), 1e-6, 1e-6, "duv");
    assert_close(j.dvv, fd2(|v| f(u0, v), v0, 1e-5), 1e-6, 1e-6, "dvv");
}

/// Catalog of nontrivial expressions, each with an in-domain evaluation
/// box: every univariate jet coefficient agrees with finite differences
/// within relative 1e-5 or absolute 1e-7, whichever is looser.
#[test]
fn jet_catalog_agrees_with_finite_differences() {
    let catalog: [(&str, f64, f64); 10] = [
        ("sin(t)*cos(2*t)", 0.2, 1.3),
        ("tan(t/2)", -1.0, 1.0),
        ("sinh(t)*tanh(t)", -1.5, 1.5),
        ("exp(-t^2)", -2.0, 2.0),
        ("log(2 + sin(t))", 0.0, 6.0),
        ("sqrt(1 + t^2)", -3.0, 3.0),
        ("atan(t)^2", -2.0, 2.0),
        ("atan2(sin(t), 2 + cos(t))", 0.0, 6.0),
        ("(1 + t^2)^(3/2)", -1.5, 1.5),
        ("t^4/(2 + cosh(t))", -1.2, 1.8),
    ];
    for (src, lo, hi) in catalog {
        let e = parse(src, &["t"]).unwrap();
        let f = |t: f64| e.eval_f64(&[t]).unwrap();
        for k in 0..7 {
            let t0 = lo + (hi - lo) * (k as f64 + 0.5) / 7.0;
            let j = e.eval(&[Jet1::seed(t0, 3)]).unwrap();
            let d1 = fd1(f, t0, 1e-5);
            let d2 = fd2(f, t0, 1e-5);
            assert!(
                (j.d1() - d1).abs() <= (1e-5 * d1.abs()).max(1e-7),
                "{src} d1 at {t0}: {} vs {d1}",
                j.d1()
            );
            assert!(
                (j.d2() - d2).abs() <= (1e-5 * d2.abs()).max(1e-6),
                "{src} d2 at {t0}: {} vs {d2}",
                j.d2()
            );
        }
    }
}

#[test]
fn bivariate_catalog_agrees_with_finite_differences() {
    let catalog: [&str; 5] = [
        "u^2*v - v^3/3",
        "sin(u)*cosh(v)",
        "exp(u*v)/(2 + cos(u))",
        "sqrt(4 + u^2 + v^2)",
        "atan2(v, 2 + u)",
    ];
    for src in catalog {
        let e = parse(src, &["u", "v"]).unwrap();
        let f = |u: f64, v: f64| e.eval_f64(&[u, v]).unwrap();
        for (u0, v0) in [(0.3, 0.5), (-0.7, 0.2), (1.1, -0.9)] {
            let j = e.eval(&[Jet2::seed_u(u0, 2), Jet2::seed_v(v0, 2)]).unwrap();
            let checks = [
                (j.du, fd1(|u| f(u, v0), u0, 1e-5), "du"),
                (j.dv, fd1(|v| f(u0, v), v0, 1e-5), "dv"),
                (j.duu, fd2(|u| f(u, v0), u0, 1e-5), "duu"),
                (j.dvv, fd2(|v| f(u0, v), v0, 1e-5), "dvv"),
                (j.duv, fd_mixed(f, u0, v0, 1e-5), "duv"),
            ];
            for (jet, fd, what) in checks {
                assert!(
                    (jet - fd).abs() <= (1e-5 * fd.abs()).max(1e-6),
                    "{src} {what} at ({u0}, {v0}): {jet} vs {fd}"
                );
            }
        }
    }
}
