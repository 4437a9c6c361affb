use serde::Serialize;

use super::analytic::analytic_correlator;
use crate::geometry::{circle_nodes, vectors_in_plane, Plane};
use crate::models::{ModelParams, Settings};

/// Orientation average of the correlator over pairs in `plane` at relative angle `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneAverageSpec {
    pub plane: Plane,
    pub phi: f64,
    pub quadrature_order: usize,
    /// Angle of the first trapezoid node.
    pub phase: f64,
}

impl PlaneAverageSpec {
    pub const DEFAULT_ORDER: usize = 256;
    pub const MIN_ORDER: usize = 4;

    pub fn new(plane: Plane, phi: f64) -> Self {
        Self { plane, phi, quadrature_order: Self::DEFAULT_ORDER, phase: 0.0 }
    }
}

/// Trapezoid average over a ∈ plane with b locked at angle φ from a.
pub fn plane_avg_correlator(params: &ModelParams, spec: &PlaneAverageSpec) -> f64 {
    let n = spec.quadrature_order.max(PlaneAverageSpec::MIN_ORDER);
    let sum: f64 = circle_nodes(n, spec.phase)
        .map(|theta| {
            let (a, b) = vectors_in_plane(&spec.plane, theta, spec.phi);
            analytic_correlator(params, &Settings::new(a, b))
        })
        .sum();
    sum / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{UnitVector3, Vec3};

    #[test]
    fn qm_plane_average_is_minus_cos() {
        let plane = Plane::from_normal(UnitVector3::new(0.2, 0.7, -0.1).unwrap());
        for k in 0..20 {
            let phi = -3.0 + 0.3 * k as f64;
            let c = plane_avg_correlator(&ModelParams::Qm, &PlaneAverageSpec::new(plane, phi));
            assert!((c + phi.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn shv_cross_term_by_plane_orientation() {
        let pbar = Vec3::new(0.0, 0.0, 0.5);
        let m = ModelParams::shv_constant(pbar).unwrap();
        let nf = 1.25f64.sqrt();
        let phi = 0.7f64;
        // normal along p̄: cross term sin φ·|p̄|
        let c = plane_avg_correlator(&m, &PlaneAverageSpec::new(Plane::xy(), phi));
        assert!((c + (phi.cos() + 0.5 * phi.sin()) / nf).abs() < 1e-12);
        // plane containing p̄: cross term absent
        let c = plane_avg_correlator(&m, &PlaneAverageSpec::new(Plane::zx(), phi));
        assert!((c + phi.cos() / nf).abs() < 1e-12);
    }

    #[test]
    fn phase_shift_invariance() {
        let m = ModelParams::shv_constant(Vec3::new(0.1, -0.4, 0.3)).unwrap();
        let plane = Plane::from_normal(UnitVector3::new(1.0, 1.0, 1.0).unwrap());
        let base = PlaneAverageSpec::new(plane, 1.1);
        let c0 = plane_avg_correlator(&m, &base);
        for phase in [0.01, 0.5, 2.0, 5.9] {
            let c = plane_avg_correlator(&m, &PlaneAverageSpec { phase, ..base });
            assert!((c - c0).abs() < 1e-10);
        }
    }
}
