use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use super::vector::{UnitVector3, ORTHO_TOL};
use crate::error::GeometryError;

/// An oriented plane through the origin.
///
/// Angles inside the plane run counterclockwise about `normal`, so for two
/// in-plane directions at relative angle φ, `(a × b)·normal = sin φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Plane {
    e1: UnitVector3,
    e2: UnitVector3,
    normal: UnitVector3,
}

impl Plane {
    pub fn from_basis(e1: UnitVector3, e2: UnitVector3) -> Result<Self, GeometryError> {
        let d = e1.dot(&e2);
        if d.abs() > ORTHO_TOL {
            return Err(GeometryError::NotOrthogonal(d));
        }
        let normal = UnitVector3::normalize(e1.cross(&e2)).ok_or(GeometryError::NotOrthogonal(d))?;
        Ok(Self { e1, e2, normal })
    }

    /// Plane with the given normal and an arbitrary in-plane basis.
    pub fn from_normal(normal: UnitVector3) -> Self {
        let e1 = normal.any_orthogonal();
        let e2 = UnitVector3::normalize(normal.cross(&e1)).expect("orthogonal unit vectors");
        Self { e1, e2, normal }
    }

    pub fn xy() -> Self {
        Self { e1: UnitVector3::X, e2: UnitVector3::Y, normal: UnitVector3::Z }
    }

    pub fn zx() -> Self {
        Self { e1: UnitVector3::Z, e2: UnitVector3::X, normal: UnitVector3::Y }
    }

    pub fn yz() -> Self {
        Self { e1: UnitVector3::Y, e2: UnitVector3::Z, normal: UnitVector3::X }
    }

    /// Same plane, opposite orientation.
    pub fn flipped(&self) -> Self {
        Self { e1: self.e2, e2: self.e1, normal: -self.normal }
    }

    pub fn e1(&self) -> UnitVector3 {
        self.e1
    }
    pub fn e2(&self) -> UnitVector3 {
        self.e2
    }
    pub fn normal(&self) -> UnitVector3 {
        self.normal
    }

    /// In-plane direction at angle `theta` from `e1`.
    pub fn direction(&self, theta: f64) -> UnitVector3 {
        let (s, c) = theta.sin_cos();
        UnitVector3::normalize(self.e1.as_vec() * c + self.e2.as_vec() * s).expect("unit combination")
    }

    pub fn is_orthogonal_to(&self, other: &Plane) -> bool {
        self.normal.dot(&other.normal).abs() <= ORTHO_TOL
    }
}

/// Settings `a` at in-plane angle `theta` and `b` at `theta + phi`.
pub fn vectors_in_plane(p: &Plane, theta: f64, phi: f64) -> (UnitVector3, UnitVector3) {
    (p.direction(theta), p.direction(theta + phi))
}

/// A right-handed orthonormal triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triad {
    pub a1: UnitVector3,
    pub a2: UnitVector3,
    pub a3: UnitVector3,
}

impl Triad {
    pub fn standard() -> Self {
        Self { a1: UnitVector3::X, a2: UnitVector3::Y, a3: UnitVector3::Z }
    }

    pub fn new(a1: UnitVector3, a2: UnitVector3) -> Result<Self, GeometryError> {
        let d = a1.dot(&a2);
        if d.abs() > ORTHO_TOL {
            return Err(GeometryError::NotOrthogonal(d));
        }
        let a3 = UnitVector3::normalize(a1.cross(&a2)).ok_or(GeometryError::NotOrthogonal(d))?;
        Ok(Self { a1, a2, a3 })
    }

    pub fn axes(&self) -> [UnitVector3; 3] {
        [self.a1, self.a2, self.a3]
    }
}

/// The four CHSH settings, coplanar in the xy-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshSettings {
    pub a: UnitVector3,
    pub b: UnitVector3,
    pub a_prime: UnitVector3,
    pub b_prime: UnitVector3,
}

/// Quantum-optimal CHSH settings: in-plane angles a = 45°, b = 90°,
/// a′ = 135°, b′ = 0°, giving a·b = a·b′ = a′·b = 1/√2 and a′·b′ = −1/√2.
pub fn chsh_optimal_settings() -> ChshSettings {
    let p = Plane::xy();
    ChshSettings {
        a: p.direction(FRAC_PI_4),
        b: p.direction(FRAC_PI_2),
        a_prime: p.direction(3.0 * FRAC_PI_4),
        b_prime: p.direction(0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranciardSettings {
    pub triad: Triad,
    pub b: [UnitVector3; 3],
    pub b_prime: [UnitVector3; 3],
}

/// `b_i`, `b′_i` lie in the (a_i, a_{i+1}) plane at ±φ/2 from `a_i`.
pub fn branciard_settings(triad: &Triad, phi: f64) -> BranciardSettings {
    let axes = triad.axes();
    let (s, c) = (phi / 2.0).sin_cos();
    let make = |sign: f64| {
        std::array::from_fn(|i| {
            let next = axes[(i + 1) % 3].as_vec();
            UnitVector3::normalize(axes[i].as_vec() * c + next * (sign * s)).expect("unit combination")
        })
    };
    BranciardSettings { triad: *triad, b: make(1.0), b_prime: make(-1.0) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector::Vec3;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

    fn unit() -> impl Strategy<Value = UnitVector3> {
        (0.0..PI, 0.0..TAU).prop_map(|(t, p)| UnitVector3::from_spherical(t, p))
    }

    #[test]
    fn basis_plane_vectors() {
        let (a, b) = vectors_in_plane(&Plane::xy(), 0.0, FRAC_PI_2);
        assert_eq!(a, UnitVector3::X);
        assert!((b.as_vec() - UnitVector3::Y.as_vec()).norm() < 1e-15);
        let (a, b) = vectors_in_plane(&Plane::xy(), 0.0, 0.0);
        assert_eq!(a, b);
    }

    #[test]
    fn chsh_dot_table() {
        let s = chsh_optimal_settings();
        assert!((s.a.dot(&s.b) - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s.a.dot(&s.b_prime) - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s.a_prime.dot(&s.b) - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s.a_prime.dot(&s.b_prime) + FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn branciard_degenerate_and_half_angle() {
        let t = Triad::standard();
        let s = branciard_settings(&t, 0.0);
        for i in 0..3 {
            assert_eq!(s.b[i], t.axes()[i]);
            assert_eq!(s.b_prime[i], t.axes()[i]);
        }
        let s = branciard_settings(&t, PI / 3.0);
        for i in 0..3 {
            assert!((t.axes()[i].dot(&s.b[i]) - 0.8660254037844387).abs() < 1e-12);
            assert!((t.axes()[i].dot(&s.b_prime[i]) - 0.8660254037844387).abs() < 1e-12);
        }
    }

    #[test]
    fn non_orthogonal_basis_rejected() {
        let d = UnitVector3::new(1.0, 1.0, 0.0).unwrap();
        assert!(Plane::from_basis(UnitVector3::X, d).is_err());
        assert!(Triad::new(UnitVector3::X, d).is_err());
    }

    #[test]
    fn in_plane_dot_grid() {
        let p = Plane::from_normal(UnitVector3::new(0.3, -0.2, 0.9).unwrap());
        for i in 0..32 {
            for j in 0..32 {
                let theta = TAU * i as f64 / 32.0;
                let phi = -PI + TAU * j as f64 / 32.0;
                let (a, b) = vectors_in_plane(&p, theta, phi);
                assert!((a.dot(&b) - phi.cos()).abs() < 1e-12);
                assert!((a.cross(&b).dot(&p.normal().as_vec()) - phi.sin()).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn plane_from_normal_is_orthonormal(n in unit()) {
            let p = Plane::from_normal(n);
            prop_assert!(p.e1().dot(&p.e2()).abs() < ORTHO_TOL);
            prop_assert!(p.normal().dot(&p.e1()).abs() < ORTHO_TOL);
            prop_assert!(p.normal().dot(&p.e2()).abs() < ORTHO_TOL);
            prop_assert!((p.e1().cross(&p.e2()) - p.normal().as_vec()).norm() < ORTHO_TOL);
            let f = p.flipped();
            prop_assert!((f.e1().cross(&f.e2()) - f.normal().as_vec()).norm() < ORTHO_TOL);
        }

        #[test]
        fn triad_is_right_handed(a in unit(), t in 0.0..TAU) {
            let a2 = Plane::from_normal(a).direction(t);
            let tr = Triad::new(a, a2).unwrap();
            prop_assert!(tr.a1.dot(&tr.a2).abs() < ORTHO_TOL);
            prop_assert!(tr.a2.dot(&tr.a3).abs() < ORTHO_TOL);
            prop_assert!(tr.a1.dot(&tr.a3).abs() < ORTHO_TOL);
            prop_assert!((tr.a1.cross(&tr.a2) - tr.a3.as_vec()).norm() < ORTHO_TOL);
        }

        #[test]
        fn vectors_in_plane_dot_is_cos_phi(n in unit(), theta in 0.0..TAU, phi in -PI..PI) {
            let (a, b) = vectors_in_plane(&Plane::from_normal(n), theta, phi);
            prop_assert!((a.dot(&b) - phi.cos()).abs() < 1e-12);
        }

        #[test]
        fn branciard_difference_orthogonal_to_axis(phi in 0.0..PI) {
            let t = Triad::standard();
            let s = branciard_settings(&t, phi);
            for i in 0..3 {
                let diff: Vec3 = s.b[i].as_vec() - s.b_prime[i].as_vec();
                prop_assert!(diff.dot(&t.axes()[i].as_vec()).abs() < 1e-12);
                prop_assert!((t.axes()[i].dot(&s.b[i]) - (phi / 2.0).cos()).abs() < 1e-12);
            }
        }
    }
}
