use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Tolerance used for all orthonormality invariants.
pub const ORTHO_TOL: f64 = 1e-12;

/// A free vector in R³.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        v.to_array()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A direction on the unit sphere.
///
/// The only ways to build one normalize their input, so `|v| = 1` holds to
/// rounding for every value of this type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct UnitVector3(Vec3);

impl From<UnitVector3> for [f64; 3] {
    fn from(u: UnitVector3) -> Self {
        u.0.to_array()
    }
}

impl<'de> Deserialize<'de> for UnitVector3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = <[f64; 3]>::deserialize(d)?;
        UnitVector3::normalize(Vec3::from(raw))
            .ok_or_else(|| serde::de::Error::custom("direction must be a nonzero finite vector"))
    }
}

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVector3 = UnitVector3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVector3 = UnitVector3(Vec3::new(0.0, 0.0, 1.0));

    /// Normalizes `v`; `None` for zero or non-finite input.
    pub fn normalize(v: Vec3) -> Option<Self> {
        let n = v.norm();
        if !n.is_finite() || n < 1e-300 {
            return None;
        }
        Some(UnitVector3(v * (1.0 / n)))
    }

    pub fn new(x: f64, y: f64, z: f64) -> Option<Self> {
        Self::normalize(Vec3::new(x, y, z))
    }

    /// Direction from polar angle `theta` (from ẑ) and azimuth `azimuth` (from x̂).
    pub fn from_spherical(theta: f64, azimuth: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = azimuth.sin_cos();
        UnitVector3(Vec3::new(st * cp, st * sp, ct))
    }

    pub fn as_vec(&self) -> Vec3 {
        self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }
    pub fn y(&self) -> f64 {
        self.0.y
    }
    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn dot(&self, other: &UnitVector3) -> f64 {
        self.0.dot(&other.0)
    }

    /// Cross product; its magnitude is the sine of the enclosed angle.
    pub fn cross(&self, other: &UnitVector3) -> Vec3 {
        self.0.cross(&other.0)
    }

    /// Dot product clamped to [−1, 1], safe to feed to `acos`.
    pub fn cos_angle(&self, other: &UnitVector3) -> f64 {
        self.dot(other).clamp(-1.0, 1.0)
    }

    /// Some unit vector orthogonal to `self`.
    pub fn any_orthogonal(&self) -> UnitVector3 {
        let v = self.0;
        let helper = if v.x.abs() <= v.y.abs() && v.x.abs() <= v.z.abs() {
            Vec3::new(1.0, 0.0, 0.0)
        } else if v.y.abs() <= v.z.abs() {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        UnitVector3::normalize(v.cross(&helper)).expect("helper axis is never parallel")
    }
}

impl Neg for UnitVector3 {
    type Output = UnitVector3;
    fn neg(self) -> UnitVector3 {
        UnitVector3(-self.0)
    }
}

pub fn dot(u: &UnitVector3, v: &UnitVector3) -> f64 {
    u.dot(v)
}

pub fn cross(u: &UnitVector3, v: &UnitVector3) -> Vec3 {
    u.cross(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_products() {
        assert_eq!(dot(&UnitVector3::X, &UnitVector3::X), 1.0);
        assert_eq!(dot(&UnitVector3::X, &UnitVector3::Y), 0.0);
        let diag = UnitVector3::new(1.0, 1.0, 0.0).unwrap();
        assert!((dot(&UnitVector3::X, &diag) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(cross(&UnitVector3::X, &UnitVector3::Y), UnitVector3::Z.as_vec());
        assert_eq!(cross(&UnitVector3::X, &UnitVector3::X), Vec3::ZERO);
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(UnitVector3::new(0.0, 0.0, 0.0).is_none());
        assert!(UnitVector3::new(f64::NAN, 0.0, 1.0).is_none());
    }

    #[test]
    fn deserialize_normalizes() {
        let u: UnitVector3 = serde_json::from_str("[0, 3, 4]").unwrap();
        assert!((u.y() - 0.6).abs() < 1e-15 && (u.z() - 0.8).abs() < 1e-15);
        assert!(serde_json::from_str::<UnitVector3>("[0, 0, 0]").is_err());
    }

    fn unit() -> impl Strategy<Value = UnitVector3> {
        (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| UnitVector3::from_spherical(t, p))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn normalized_after_construction(x in -10.0..10.0f64, y in -10.0..10.0f64, z in -10.0..10.0f64) {
            prop_assume!(x * x + y * y + z * z > 1e-6);
            let u = UnitVector3::new(x, y, z).unwrap();
            prop_assert!((u.as_vec().norm_squared() - 1.0).abs() < ORTHO_TOL);
        }

        #[test]
        fn lagrange_identity(a in unit(), b in unit()) {
            // component arithmetic written out independently of Vec3::cross
            let (ax, ay, az) = (a.x(), a.y(), a.z());
            let (bx, by, bz) = (b.x(), b.y(), b.z());
            let c2 = (ay * bz - az * by).powi(2) + (az * bx - ax * bz).powi(2) + (ax * by - ay * bx).powi(2);
            let d = ax * bx + ay * by + az * bz;
            prop_assert!((c2 + d * d - 1.0).abs() < 1e-12);
            prop_assert!((cross(&a, &b).norm_squared() - c2).abs() < 1e-12);
        }

        #[test]
        fn any_orthogonal_is_orthogonal(a in unit()) {
            let o = a.any_orthogonal();
            prop_assert!(a.dot(&o).abs() < ORTHO_TOL);
            prop_assert!((o.as_vec().norm() - 1.0).abs() < ORTHO_TOL);
        }
    }
}
