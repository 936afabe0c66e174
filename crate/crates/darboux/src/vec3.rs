//! Ambient 3-vectors, generic over the scalar so the same frame formulas
//! run on plain numbers and on jets.

use std::ops::{Add, Neg, Sub};

use crate::jets::{Func, JetError, JetNum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<T = f64> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Vec3<T> {
        Vec3 { x, y, z }
    }
}

impl<T: JetNum> Vec3<T> {
    pub fn dot(self, o: Vec3<T>) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3<T>) -> Vec3<T> {
        Vec3 {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn scale(self, k: T) -> Vec3<T> {
        Vec3 {
            x: self.x * k,
            y: self.y * k,
            z: self.z * k,
        }
    }

    /// Jet-valued norm; errors if the squared norm is not strictly positive.
    pub fn norm_jet(self) -> Result<T, JetError> {
        self.dot(self).apply(Func::Sqrt)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, k: T) -> Result<Vec3<T>, JetError> {
        Ok(Vec3 {
            x: self.x.div(k)?,
            y: self.y.div(k)?,
            z: self.z.div(k)?,
        })
    }

    /// Pointwise values; collapses a jet vector to its ambient position.
    pub fn values(self) -> Vec3<f64> {
        Vec3 {
            x: self.x.value(),
            y: self.y.value(),
            z: self.z.value(),
        }
    }
}

impl<T: JetNum> Add for Vec3<T> {
    type Output = Vec3<T>;
    fn add(self, o: Vec3<T>) -> Vec3<T> {
        Vec3 {
            x: self.x + o.x,
            y: self.y + o.y,
            z: self.z + o.z,
        }
    }
}

impl<T: JetNum> Sub for Vec3<T> {
    type Output = Vec3<T>;
    fn sub(self, o: Vec3<T>) -> Vec3<T> {
        Vec3 {
            x: self.x - o.x,
            y: self.y - o.y,
            z: self.z - o.z,
        }
    }
}

impl<T: JetNum> Neg for Vec3<T> {
    type Output = Vec3<T>;
    fn neg(self) -> Vec3<T> {
        Vec3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl Vec3<f64> {
    pub const ZERO: Vec3<f64> = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector in the same direction; caller guarantees nonzero length.
    pub fn normalized(self) -> Vec3<f64> {
        self.scale(1.0 / self.norm())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}
