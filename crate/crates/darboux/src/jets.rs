//! Truncated Taylor jets: forward-mode automatic differentiation.
//!
//! Every derivative the geometry needs (patch partials through second
//! order, curve derivatives through third order, dilation gradients) is
//! propagated exactly through arithmetic instead of being estimated by
//! finite differences. Coefficients are stored as plain derivatives, not
//! Taylor coefficients: `c[k]` of a [`Jet1`] is d^k f / dt^k.
//!
//! Orders are fixed per evaluation context: curve-parameter jets carry
//! order 3, surface-parameter jets order 2, dilation jets order 1.
//! Arithmetic never reads slots beyond the active order.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Neg, Sub};

/// Errors raised by jet arithmetic and elementary functions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JetError {
    #[error("division by a zero-valued jet")]
    DivisionByZero,
    #[error("{func} of out-of-domain value {value}")]
    Domain { func: &'static str, value: f64 },
    #[error("power of non-positive base {base} with non-integer exponent {exponent}")]
    NonIntegerPower { base: f64, exponent: f64 },
    #[error("atan2 is undefined at (0, 0)")]
    Atan2Origin,
}

/// Elementary functions with jet propagation rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Atan,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Value and first three derivatives of `f` at `x`, for composing `f`
/// with a jet via the chain rule.
fn func_derivs(f: Func, x: f64) -> Result<[f64; 4], JetError> {
    let d = match f {
        Func::Sin => [x.sin(), x.cos(), -x.sin(), -x.cos()],
        Func::Cos => [x.cos(), -x.sin(), -x.cos(), x.sin()],
        Func::Tan => {
            let t = x.tan();
            let s = 1.0 + t * t;
            [t, s, 2.0 * t * s, 2.0 * s * (1.0 + 3.0 * t * t)]
        }
        Func::Sinh => [x.sinh(), x.cosh(), x.sinh(), x.cosh()],
        Func::Cosh => [x.cosh(), x.sinh(), x.cosh(), x.sinh()],
        Func::Tanh => {
            let t = x.tanh();
            let s = 1.0 - t * t;
            [t, s, -2.0 * t * s, s * (6.0 * t * t - 2.0)]
        }
        Func::Exp => {
            let e = x.exp();
            [e, e, e, e]
        }
        Func::Log => {
            if x <= 0.0 {
                return Err(JetError::Domain {
                    func: "log",
                    value: x,
                });
            }
            let r = 1.0 / x;
            [x.ln(), r, -r * r, 2.0 * r * r * r]
        }
        Func::Sqrt => {
            if x <= 0.0 {
                return Err(JetError::Domain {
                    func: "sqrt",
                    value: x,
                });
            }
            let s = x.sqrt();
            [s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)]
        }
        Func::Atan => {
            let q = 1.0 + x * x;
            [
                x.atan(),
                1.0 / q,
                -2.0 * x / (q * q),
                (6.0 * x * x - 2.0) / (q * q * q),
            ]
        }
    };
    Ok(d)
}

/// x^p for integer p, with zero-coefficient terms short-circuited so no
/// 0 * inf appears at x = 0.
fn powi_derivs(x: f64, p: i32) -> [f64; 4] {
    let mut d = [0.0; 4];
    d[0] = x.powi(p);
    let mut coeff = 1.0;
    for (k, slot) in d.iter_mut().enumerate().skip(1) {
        coeff *= (p - (k as i32 - 1)) as f64;
        if coeff == 0.0 {
            break;
        }
        *slot = coeff * x.powi(p - k as i32);
    }
    d
}

/// Scalars that carry derivatives through arithmetic. Implemented by
/// [`Jet1`], [`Jet2`] and plain `f64` (the derivative-free instance used
/// by finite-difference verification).
#[allow(clippy::should_implement_trait)]
pub trait JetNum:
    Copy
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn constant(x: f64) -> Self;
    fn value(self) -> f64;
    fn div(self, rhs: Self) -> Result<Self, JetError>;
    fn pow(self, rhs: Self) -> Result<Self, JetError>;
    fn apply(self, f: Func) -> Result<Self, JetError>;
    /// True when every derivative slot is exactly zero.
    fn is_constant(self) -> bool;

    /// Four-quadrant arctangent. The rotation offset is constant on each
    /// branch, so the derivative content reduces to a plain `atan` of a
    /// bounded ratio.
    fn atan2(self, x: Self) -> Result<Self, JetError> {
        let yv = self.value();
        let xv = x.value();
        if yv == 0.0 && xv == 0.0 {
            return Err(JetError::Atan2Origin);
        }
        if xv.abs() >= yv.abs() {
            let base = self.div(x)?.apply(Func::Atan)?;
            let offset = if xv > 0.0 {
                0.0
            } else if yv >= 0.0 {
                PI
            } else {
                -PI
            };
            Ok(base + Self::constant(offset))
        } else {
            let base = x.div(self)?.apply(Func::Atan)?;
            let offset = if yv > 0.0 { FRAC_PI_2 } else { -FRAC_PI_2 };
            Ok(Self::constant(offset) - base)
        }
    }
}

/// Shared power rule: integer exponents go through `powi` (valid for any
/// base), everything else through exp(e log b) and requires base > 0.
fn pow_impl<J: Compose>(base: J, exp: J) -> Result<J, JetError> {
    let b = base.value();
    let e = exp.value();
    if exp.is_constant() && e == e.trunc() && e.abs() <= i32::MAX as f64 {
        let p = e as i32;
        if b == 0.0 && p < 0 {
            return Err(JetError::DivisionByZero);
        }
        return base.compose_table(powi_derivs(b, p));
    }
    if b <= 0.0 {
        return Err(JetError::NonIntegerPower {
            base: b,
            exponent: e,
        });
    }
    let ln = base.apply(Func::Log)?;
    (exp * ln).apply(Func::Exp)
}

/// Internal hook: compose a jet with a scalar function given its
/// derivative table at the jet's value.
trait Compose: JetNum {
    fn compose_table(self, d: [f64; 4]) -> Result<Self, JetError>;
}

impl JetNum for f64 {
    fn constant(x: f64) -> f64 {
        x
    }

    fn value(self) -> f64 {
        self
    }

    fn div(self, rhs: f64) -> Result<f64, JetError> {
        if rhs == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn pow(self, rhs: f64) -> Result<f64, JetError> {
        pow_impl(self, rhs)
    }

    fn apply(self, f: Func) -> Result<f64, JetError> {
        Ok(func_derivs(f, self)?[0])
    }

    fn is_constant(self) -> bool {
        true
    }

    fn atan2(self, x: f64) -> Result<f64, JetError> {
        if self == 0.0 && x == 0.0 {
            return Err(JetError::Atan2Origin);
        }
        Ok(f64::atan2(self, x))
    }
}

impl Compose for f64 {
    fn compose_table(self, d: [f64; 4]) -> Result<f64, JetError> {
        Ok(d[0])
    }
}

/// Univariate jet of order 1..=3: value and derivatives with respect to
/// the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1 {
    c: [f64; 4],
    order: u8,
}

impl Jet1 {
    pub const MAX_ORDER: u8 = 3;

    pub fn new(c: [f64; 4], order: u8) -> Jet1 {
        assert!(
            (1..=Self::MAX_ORDER).contains(&order),
            "jet order must be 1..=3"
        );
        let mut c = c;
        for slot in c.iter_mut().skip(order as usize + 1) {
            *slot = 0.0;
        }
        Jet1 { c, order }
    }

    /// Seed for the independent variable: value slot set, first derivative 1.
    pub fn seed(value: f64, order: u8) -> Jet1 {
        let mut j = Jet1::new([0.0; 4], order);
        j.c[0] = value;
        j.c[1] = 1.0;
        j
    }

    pub fn order(self) -> u8 {
        self.order
    }

    pub fn d1(self) -> f64 {
        self.c[1]
    }

    pub fn d2(self) -> f64 {
        self.c[2]
    }

    pub fn d3(self) -> f64 {
        self.c[3]
    }

    pub fn coeffs(self) -> [f64; 4] {
        self.c
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; 4];
        for (k, slot) in c.iter_mut().enumerate().take(order as usize + 1) {
            *slot = self.c[k] + rhs.c[k];
        }
        Jet1 { c, order }
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        self + (-rhs)
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        let mut c = self.c;
        for x in &mut c {
            *x = -*x;
        }
        Jet1 {
            c,
            order: self.order,
        }
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        let order = self.order.min(rhs.order);
        let a = self.c;
        let b = rhs.c;
        let mut c = [0.0; 4];
        c[0] = a[0] * b[0];
        if order >= 1 {
            c[1] = a[1] * b[0] + a[0] * b[1];
        }
        if order >= 2 {
            c[2] = a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2];
        }
        if order >= 3 {
            c[3] = a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3];
        }
        Jet1 { c, order }
    }
}

impl JetNum for Jet1 {
    fn constant(x: f64) -> Jet1 {
        let mut c = [0.0; 4];
        c[0] = x;
        Jet1 {
            c,
            order: Self::MAX_ORDER,
        }
    }

    fn value(self) -> f64 {
        self.c[0]
    }

    fn div(self, rhs: Jet1) -> Result<Jet1, JetError> {
        if rhs.c[0] == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        let x = rhs.c[0];
        let r = 1.0 / x;
        let recip = rhs.compose_table([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])?;
        Ok(self * recip)
    }

    fn pow(self, rhs: Jet1) -> Result<Jet1, JetError> {
        pow_impl(self, rhs)
    }

    fn apply(self, f: Func) -> Result<Jet1, JetError> {
        self.compose_table(func_derivs(f, self.c[0])?)
    }

    fn is_constant(self) -> bool {
        self.c[1] == 0.0 && self.c[2] == 0.0 && self.c[3] == 0.0
    }
}

impl Compose for Jet1 {
    /// Chain rule through third order (Faa di Bruno).
    fn compose_table(self, d: [f64; 4]) -> Result<Jet1, JetError> {
        let g = self.c;
        let order = self.order;
        let mut c = [0.0; 4];
        c[0] = d[0];
        if order >= 1 {
            c[1] = d[1] * g[1];
        }
        if order >= 2 {
            c[2] = d[1] * g[2] + d[2] * g[1] * g[1];
        }
        if order >= 3 {
            c[3] = d[1] * g[3] + 3.0 * d[2] * g[1] * g[2] + d[3] * g[1] * g[1] * g[1];
        }
        Ok(Jet1 { c, order })
    }
}

/// Bivariate jet of order 1..=2: value and partials with respect to the
/// two surface parameters. Mixed-partial symmetry is structural: there is
/// a single `duv` slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
    order: u8,
}

impl Jet2 {
    pub const MAX_ORDER: u8 = 2;

    pub fn new(v: f64, du: f64, dv: f64, duu: f64, duv: f64, dvv: f64, order: u8) -> Jet2 {
        assert!(
            (1..=Self::MAX_ORDER).contains(&order),
            "jet order must be 1 or 2"
        );
        if order == 1 {
            Jet2 {
                v,
                du,
                dv,
                duu: 0.0,
                duv: 0.0,
                dvv: 0.0,
                order,
            }
        } else {
            Jet2 {
                v,
                du,
                dv,
                duu,
                duv,
                dvv,
                order,
            }
        }
    }

    /// Seed for the first surface parameter.
    pub fn seed_u(value: f64, order: u8) -> Jet2 {
        Jet2::new(value, 1.0, 0.0, 0.0, 0.0, 0.0, order)
    }

    /// Seed for the second surface parameter.
    pub fn seed_v(value: f64, order: u8) -> Jet2 {
        Jet2::new(value, 0.0, 1.0, 0.0, 0.0, 0.0, order)
    }

    pub fn order(self) -> u8 {
        self.order
    }

    /// The order-1 jet of this jet's u-partial. Only meaningful on an
    /// order-2 jet; it is how first-form partials are produced.
    pub fn slice_du(self) -> Jet2 {
        Jet2 {
            v: self.du,
            du: self.duu,
            dv: self.duv,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
            order: 1,
        }
    }

    /// The order-1 jet of this jet's v-partial.
    pub fn slice_dv(self) -> Jet2 {
        Jet2 {
            v: self.dv,
            du: self.duv,
            dv: self.dvv,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
            order: 1,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        let order = self.order.min(rhs.order);
        let mut r = Jet2 {
            v: self.v + rhs.v,
            du: self.du + rhs.du,
            dv: self.dv + rhs.dv,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
            order,
        };
        if order >= 2 {
            r.duu = self.duu + rhs.duu;
            r.duv = self.duv + rhs.duv;
            r.dvv = self.dvv + rhs.dvv;
        }
        r
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            v: -self.v,
            du: -self.du,
            dv: -self.dv,
            duu: -self.duu,
            duv: -self.duv,
            dvv: -self.dvv,
            order: self.order,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let order = self.order.min(rhs.order);
        let (a, b) = (self, rhs);
        let mut r = Jet2 {
            v: a.v * b.v,
            du: a.du * b.v + a.v * b.du,
            dv: a.dv * b.v + a.v * b.dv,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
            order,
        };
        if order >= 2 {
            r.duu = a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu;
            r.duv = a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv;
            r.dvv = a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv;
        }
        r
    }
}

impl JetNum for Jet2 {
    fn constant(x: f64) -> Jet2 {
        Jet2 {
            v: x,
            du: 0.0,
            dv: 0.0,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
            order: Self::MAX_ORDER,
        }
    }

    fn value(self) -> f64 {
        self.v
    }

    fn div(self, rhs: Jet2) -> Result<Jet2, JetError> {
        if rhs.v == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        let r = 1.0 / rhs.v;
        let recip = rhs.compose_table([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])?;
        Ok(self * recip)
    }

    fn pow(self, rhs: Jet2) -> Result<Jet2, JetError> {
        pow_impl(self, rhs)
    }

    fn apply(self, f: Func) -> Result<Jet2, JetError> {
        self.compose_table(func_derivs(f, self.v)?)
    }

    fn is_constant(self) -> bool {
        self.du == 0.0 && self.dv == 0.0 && self.duu == 0.0 && self.duv == 0.0 && self.dvv == 0.0
    }
}

impl Compose for Jet2 {
    fn compose_table(self, d: [f64; 4]) -> Result<Jet2, JetError> {
        let g = self;
        let mut r = Jet2 {
            v: d[0],
            du: d[1] * g.du,
            dv: d[1] * g.dv,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
            order: g.order,
        };
        if g.order >= 2 {
            r.duu = d[1] * g.duu + d[2] * g.du * g.du;
            r.duv = d[1] * g.duv + d[2] * g.du * g.dv;
            r.dvv = d[1] * g.dvv + d[2] * g.dv * g.dv;
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn seed_layout() {
        let t = Jet1::seed(5.0, 3);
        assert_eq!(t.coeffs(), [5.0, 1.0, 0.0, 0.0]);
        let u = Jet2::seed_u(0.0, 2);
        assert_eq!(
            (u.v, u.du, u.dv, u.duu, u.duv, u.dvv),
            (0.0, 1.0, 0.0, 0.0, 0.0, 0.0)
        );
        let v = Jet2::seed_v(-1.2, 2);
        assert_eq!(
            (v.v, v.du, v.dv, v.duu, v.duv, v.dvv),
            (-1.2, 0.0, 1.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn constant_product() {
        let p = Jet1::constant(3.0) * Jet1::constant(4.0);
        assert_eq!(p.coeffs(), [12.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn seeded_square() {
        let t = Jet1::seed(2.0, 3);
        let p = t * t;
        assert_eq!(p.coeffs(), [4.0, 4.0, 2.0, 0.0]);
    }

    #[test]
    fn sin_maclaurin() {
        let s = Jet1::seed(0.0, 3).apply(Func::Sin).unwrap();
        assert_relative_eq!(s.value(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.d1(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(s.d2(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.d3(), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn cosh_maclaurin() {
        let c = Jet2::seed_v(0.0, 2).apply(Func::Cosh).unwrap();
        assert_relative_eq!(c.v, 1.0, epsilon = 1e-15);
        assert_relative_eq!(c.dv, 0.0, epsilon = 1e-15);
        assert_relative_eq!(c.dvv, 1.0, epsilon = 1e-15);
        assert_relative_eq!(c.du, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn division_by_zero_value() {
        let t = Jet1::seed(0.0, 3);
        assert_eq!(Jet1::constant(1.0).div(t), Err(JetError::DivisionByZero));
    }

    #[test]
    fn log_domain_reports_value() {
        let t = Jet1::seed(-0.25, 2);
        assert_eq!(
            t.apply(Func::Log),
            Err(JetError::Domain {
                func: "log",
                value: -0.25
            })
        );
    }

    #[test]
    fn fractional_power_of_negative_base() {
        let t = Jet1::seed(-2.0, 2);
        let e = Jet1::constant(0.5);
        assert_eq!(
            t.pow(e),
            Err(JetError::NonIntegerPower {
                base: -2.0,
                exponent: 0.5
            })
        );
    }

    #[test]
    fn integer_power_of_negative_base() {
        let t = Jet1::seed(-2.0, 3);
        let p = t.pow(Jet1::constant(3.0)).unwrap();
        assert_relative_eq!(p.value(), -8.0, epsilon = 1e-12);
        assert_relative_eq!(p.d1(), 12.0, epsilon = 1e-12);
        assert_relative_eq!(p.d2(), -12.0, epsilon = 1e-12);
        assert_relative_eq!(p.d3(), 6.0, epsilon = 1e-12);
    }

    #[test]
    fn integer_power_at_zero_has_no_nan() {
        let t = Jet1::seed(0.0, 3);
        let p = t.pow(Jet1::constant(2.0)).unwrap();
        assert_eq!(p.coeffs(), [0.0, 0.0, 2.0, 0.0]);
    }

    #[test]
    fn variable_exponent_uses_exp_log() {
        // t^t at t = 2: value 4, d/dt = t^t (ln t + 1)
        let t = Jet1::seed(2.0, 2);
        let p = t.pow(t).unwrap();
        assert_relative_eq!(p.value(), 4.0, epsilon = 1e-12);
        assert_relative_eq!(p.d1(), 4.0 * (2.0_f64.ln() + 1.0), epsilon = 1e-12);
    }

    #[test]
    fn atan2_matches_f64_and_derivative() {
        for &(y0, x0) in &[
            (0.3, 1.1),
            (1.1, 0.3),
            (-0.7, -0.2),
            (0.5, -1.3),
            (-1.2, 0.4),
        ] {
            // y(t) = y0 + t, x(t) = x0 - 2t around t = 0
            let y = Jet1::new([y0, 1.0, 0.0, 0.0], 2);
            let x = Jet1::new([x0, -2.0, 0.0, 0.0], 2);
            let a = JetNum::atan2(y, x).unwrap();
            assert_relative_eq!(a.value(), f64::atan2(y0, x0), epsilon = 1e-14);
            let expect_d1 = (x0 * 1.0 - y0 * (-2.0)) / (x0 * x0 + y0 * y0);
            assert_relative_eq!(a.d1(), expect_d1, epsilon = 1e-12);
        }
        assert_eq!(
            JetNum::atan2(Jet1::constant(0.0), Jet1::constant(0.0)),
            Err(JetError::Atan2Origin)
        );
    }

    #[test]
    fn order_is_respected() {
        let t = Jet1::seed(1.5, 1);
        let p = (t * t) * t;
        assert_eq!(p.order(), 1);
        assert_eq!(p.d2(), 0.0);
        assert_eq!(p.d3(), 0.0);
        assert_relative_eq!(p.d1(), 3.0 * 1.5 * 1.5, epsilon = 1e-12);
    }

    #[test]
    fn order1_jet2_keeps_second_order_empty() {
        let u = Jet2::seed_u(0.7, 1);
        let s = u.apply(Func::Sin).unwrap();
        assert_eq!(s.order(), 1);
        assert_eq!((s.duu, s.duv, s.dvv), (0.0, 0.0, 0.0));
        assert_relative_eq!(s.du, 0.7_f64.cos(), epsilon = 1e-15);
    }
}
