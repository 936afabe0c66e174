//! Arc-length reparametrization: cumulative length by adaptive Simpson
//! quadrature, inversion by Newton with a bisection fallback.

use crate::tol;

/// Errors from quadrature or inversion.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArcLengthError<E> {
    #[error(transparent)]
    Speed(E),
    #[error("arc length is not strictly increasing near t = {t}")]
    NonMonotone { t: f64 },
    #[error("adaptive quadrature failed to converge on [{a}, {b}]")]
    NoConvergence { a: f64, b: f64 },
}

/// Sampled map between arc length and the original curve parameter.
#[derive(Debug, Clone)]
pub struct ArcLengthMap {
    /// `(s, t)` pairs, evenly spaced in s, first entry (0, t0), last (total, t1).
    pub samples: Vec<(f64, f64)>,
    pub total: f64,
}

/// Integrate `speed` over `[t0, t1]` and tabulate the inverse map at
/// `n >= 2` evenly spaced arc lengths.
pub fn reparametrize<E>(
    mut speed: impl FnMut(f64) -> Result<f64, E>,
    t0: f64,
    t1: f64,
    n: usize,
) -> Result<ArcLengthMap, ArcLengthError<E>> {
    assert!(n >= 2, "need at least two samples");
    assert!(t1 > t0, "parameter range must be nondegenerate");
    let total = integrate(&mut speed, t0, t1, tol::ARCLEN_QUADRATURE)?;
    let mut samples = Vec::with_capacity(n);
    samples.push((0.0, t0));
    let mut t_prev = t0;
    let mut s_prev = 0.0;
    for i in 1..n {
        let s_target = total * i as f64 / (n - 1) as f64;
        let t = if i == n - 1 {
            t1
        } else {
            invert(&mut speed, t_prev, s_prev, t1, s_target, total)?
        };
        samples.push((s_target, t));
        t_prev = t;
        s_prev = s_target;
    }
    Ok(ArcLengthMap { samples, total })
}

/// Arc length from `a` to `b` (absolute tolerance [`tol::ARCLEN_QUADRATURE`]).
pub fn integrate<E>(
    speed: &mut impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    tolerance: f64,
) -> Result<f64, ArcLengthError<E>> {
    if a == b {
        return Ok(0.0);
    }
    let fa = eval_speed(speed, a)?;
    let fm = eval_speed(speed, 0.5 * (a + b))?;
    let fb = eval_speed(speed, b)?;
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(speed, a, b, fa, fm, fb, whole, tolerance, 0)
}

fn eval_speed<E>(
    speed: &mut impl FnMut(f64) -> Result<f64, E>,
    t: f64,
) -> Result<f64, ArcLengthError<E>> {
    let v = speed(t).map_err(ArcLengthError::Speed)?;
    if v <= 0.0 {
        return Err(ArcLengthError::NonMonotone { t });
    }
    Ok(v)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

const MAX_DEPTH: u32 = 48;

#[allow(clippy::too_many_arguments)]
fn adaptive<E>(
    speed: &mut impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tolerance: f64,
    depth: u32,
) -> Result<f64, ArcLengthError<E>> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval_speed(speed, lm)?;
    let frm = eval_speed(speed, rm)?;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tolerance || (b - a).abs() < 1e-14 * (1.0 + a.abs()) {
        // Richardson extrapolation term.
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(ArcLengthError::NoConvergence { a, b });
    }
    let half_tol = 0.5 * tolerance;
    let l = adaptive(speed, a, m, fa, flm, fm, left, half_tol, depth + 1)?;
    let r = adaptive(speed, m, b, fm, frm, fb, right, half_tol, depth + 1)?;
    Ok(l + r)
}

/// Solve arclen(t0..t) = s_target for t, starting from a known pair
/// (t_lo, s_lo) with s_lo <= s_target, bracketed above by t_hi.
fn invert<E>(
    speed: &mut impl FnMut(f64) -> Result<f64, E>,
    t_lo: f64,
    s_lo: f64,
    t_hi: f64,
    s_target: f64,
    total: f64,
) -> Result<f64, ArcLengthError<E>> {
    let tol_s = tol::ARCLEN_INVERT * (1.0 + total);
    let mut lo = t_lo;
    let mut hi = t_hi;
    let mut t = t_lo;
    let mut s_here = s_lo;
    for _ in 0..200 {
        if (s_here - s_target).abs() <= tol_s {
            return Ok(t);
        }
        let v = eval_speed(speed, t)?;
        let mut cand = t + (s_target - s_here) / v;
        if !cand.is_finite() || cand <= lo || cand >= hi {
            cand = 0.5 * (lo + hi);
        }
        let ds = integrate(speed, t.min(cand), t.max(cand), tol::ARCLEN_QUADRATURE)?;
        let s_cand = if cand >= t { s_here + ds } else { s_here - ds };
        if s_cand <= s_target {
            lo = cand;
        } else {
            hi = cand;
        }
        t = cand;
        s_here = s_cand;
        if (hi - lo).abs() <= 1e-15 * (1.0 + hi.abs()) {
            return Ok(t);
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64, std::convert::Infallible> {
        move |t| Ok(f(t))
    }

    #[test]
    fn unit_speed_is_identity() {
        let map = reparametrize(ok(|_| 1.0), 0.25, 2.25, 9).unwrap();
        assert_relative_eq!(map.total, 2.0, epsilon = 1e-12);
        for (s, t) in &map.samples {
            assert_relative_eq!(*t, 0.25 + s, epsilon = 1e-9);
        }
    }

    #[test]
    fn constant_speed_two() {
        let map = reparametrize(ok(|_| 2.0), 0.0, 3.0, 7).unwrap();
        assert_relative_eq!(map.total, 6.0, epsilon = 1e-12);
        for (s, t) in &map.samples {
            assert_relative_eq!(*t, s / 2.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn smooth_varying_speed_round_trips() {
        // speed = 2 + sin t; s(t) = 2t - cos t + 1 from 0
        let mut f = ok(|t: f64| 2.0 + t.sin());
        let map = reparametrize(&mut f, 0.0, 5.0, 21).unwrap();
        assert_relative_eq!(map.total, 2.0 * 5.0 - 5.0_f64.cos() + 1.0, epsilon = 1e-9);
        for (s, t) in &map.samples {
            let analytic = 2.0 * t - t.cos() + 1.0;
            assert_relative_eq!(analytic, *s, epsilon = 1e-8);
        }
    }

    #[test]
    fn zero_speed_is_rejected() {
        let err = reparametrize(ok(|t: f64| t), 0.0, 1.0, 9).unwrap_err();
        assert!(matches!(err, ArcLengthError::NonMonotone { t } if t == 0.0));
    }
}
