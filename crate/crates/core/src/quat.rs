//! Minimal quaternion arithmetic for the binary polyhedral groups and SO(4).

use std::ops::{Mul, Neg};

use nalgebra::{Complex, Matrix2, Matrix3};
use serde::{Deserialize, Serialize};

/// `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// `cos θ + sin θ · i`.
    pub fn exp_i(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin(), 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(self, other: Quat) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
    }

    /// Rotation `v ↦ q v q̄` of the pure quaternions, for unit `q`.
    pub fn to_so3(self) -> Matrix3<f64> {
        let Quat { w, x, y, z } = self;
        Matrix3::new(
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        )
    }

    /// The standard embedding of the unit quaternions as SU(2), compatible
    /// with multiplication.
    pub fn to_su2(self) -> Matrix2<Complex<f64>> {
        let a = Complex::new(self.w, self.x);
        let b = Complex::new(self.y, self.z);
        Matrix2::new(a, b, -b.conj(), a.conj())
    }
}

impl Mul for Quat {
    type Output = Quat;

    fn mul(self, o: Quat) -> Quat {
        Quat::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Neg for Quat {
    type Output = Quat;

    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        assert_eq!(Quat::I * Quat::J, Quat::K);
        assert_eq!(Quat::J * Quat::K, Quat::I);
        assert_eq!(Quat::K * Quat::I, Quat::J);
        assert_eq!(Quat::I * Quat::I, -Quat::ONE);
    }

    #[test]
    fn su2_is_multiplicative() {
        let p = Quat::new(0.5, 0.5, -0.5, 0.5);
        let q = Quat::new(0.6, 0.0, 0.8, 0.0);
        let lhs = (p * q).to_su2();
        let rhs = p.to_su2() * q.to_su2();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn so3_is_multiplicative() {
        let p = Quat::new(0.5, 0.5, 0.5, 0.5);
        let q = Quat::exp_i(0.3);
        assert!(((p * q).to_so3() - p.to_so3() * q.to_so3()).norm() < 1e-14);
        assert!((p.to_so3().determinant() - 1.0).abs() < 1e-14);
    }
}
