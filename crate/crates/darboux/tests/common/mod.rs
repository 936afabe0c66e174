//! Shared analytic fixtures and finite-difference helpers for the
//! integration tests. The FD helpers are the independent oracle: they
//! only ever call plain-number evaluation.

#![allow(dead_code)]

use darboux::geom::{CurveOnSurface, Parametrization, SurfacePatch};

pub const TAU: f64 = std::f64::consts::TAU;

pub fn plane() -> SurfacePatch {
    SurfacePatch::parse("u", "v", "0", (-2.5, 2.5), (-2.5, 2.5)).unwrap()
}

pub fn catenoid() -> SurfacePatch {
    SurfacePatch::parse(
        "cosh(v)*cos(u)",
        "cosh(v)*sin(u)",
        "v",
        (-2.5, 2.5),
        (-1.2, 1.2),
    )
    .unwrap()
}

pub fn helicoid() -> SurfacePatch {
    SurfacePatch::parse(
        "sinh(v)*cos(u)",
        "sinh(v)*sin(u)",
        "u",
        (-2.5, 2.5),
        (-1.2, 1.2),
    )
    .unwrap()
}

pub fn sphere() -> SurfacePatch {
    SurfacePatch::parse(
        "sin(v)*cos(u)",
        "sin(v)*sin(u)",
        "cos(v)",
        (-0.5, 7.0),
        (0.3, 2.85),
    )
    .unwrap()
}

pub fn cone() -> SurfacePatch {
    SurfacePatch::parse("v*cos(u)", "v*sin(u)", "v", (-0.5, 7.0), (0.4, 2.5)).unwrap()
}

pub fn cylinder() -> SurfacePatch {
    SurfacePatch::parse("cos(u)", "sin(u)", "v", (-1.5, 7.0), (-3.4, 3.4)).unwrap()
}

pub fn stereo_sphere() -> SurfacePatch {
    SurfacePatch::parse(
        "2*u/(1+u^2+v^2)",
        "2*v/(1+u^2+v^2)",
        "(u^2+v^2-1)/(1+u^2+v^2)",
        (-0.8, 0.8),
        (-0.8, 0.8),
    )
    .unwrap()
}

pub fn small_plane() -> SurfacePatch {
    SurfacePatch::parse("u", "v", "0", (-0.8, 0.8), (-0.8, 0.8)).unwrap()
}

pub fn paraboloid() -> SurfacePatch {
    SurfacePatch::parse("u", "v", "(u^2+v^2)/2", (-1.0, 1.0), (-1.0, 1.0)).unwrap()
}

pub fn paraboloid_reflected() -> SurfacePatch {
    SurfacePatch::parse("u", "v", "-(u^2+v^2)/2", (-1.0, 1.0), (-1.0, 1.0)).unwrap()
}

pub fn unit_circle() -> CurveOnSurface {
    CurveOnSurface::parse(
        "cos(t)",
        "sin(t)",
        (0.0, TAU),
        Parametrization::AssertUnitSpeed,
    )
    .unwrap()
}

pub fn great_circle() -> CurveOnSurface {
    CurveOnSurface::parse("t", "pi/2", (0.0, TAU), Parametrization::AssertUnitSpeed).unwrap()
}

/// Helix u = t, v = b t on the unit cylinder.
pub fn helix(b: f64) -> CurveOnSurface {
    CurveOnSurface::parse(
        "t",
        &format!("({b})*t"),
        (0.0, TAU),
        Parametrization::Reparametrize,
    )
    .unwrap()
}

/// A wavy closed curve on the cone, not unit speed.
pub fn cone_wave() -> CurveOnSurface {
    CurveOnSurface::parse(
        "t",
        "1 + 0.3*sin(t)",
        (0.0, TAU),
        Parametrization::Reparametrize,
    )
    .unwrap()
}

/// The shared coordinate line v = 0.3 used on the helicoid/catenoid pair.
pub fn coordinate_line() -> CurveOnSurface {
    CurveOnSurface::parse("t", "0.3", (-2.0, 2.0), Parametrization::Reparametrize).unwrap()
}

/// Circle of radius r around the origin in the parameter plane.
pub fn parameter_circle(r: f64) -> CurveOnSurface {
    CurveOnSurface::parse(
        &format!("({r})*cos(t)"),
        &format!("({r})*sin(t)"),
        (0.0, TAU),
        Parametrization::Reparametrize,
    )
    .unwrap()
}

// Central finite differences. First derivatives use the given step, second
// derivatives ten times that step, third derivatives one hundred times.

pub fn fd1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn fd2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let h = 10.0 * h;
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

pub fn fd3(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let h = 100.0 * h;
    (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
}

pub fn fd_mixed(f: impl Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
    let h = 10.0 * h;
    (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)
}

/// |a - b| <= max(rel * |b|, abs_floor)
pub fn assert_close(a: f64, b: f64, rel: f64, abs_floor: f64, what: &str) {
    let tol = (rel * b.abs()).max(abs_floor);
    assert!(
        (a - b).abs() <= tol,
        "{what}: {a} vs {b} (|diff| = {:e}, tol = {:e})",
        (a - b).abs(),
        tol
    );
}
