//! Product-rule quadrature on the sphere and trapezoid nodes on the circle.

use std::f64::consts::{PI, TAU};

use super::vector::UnitVector3;

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre in cos θ times a uniform trapezoid in azimuth, with
/// weights normalized to the uniform probability measure on the sphere.
///
/// Exact for polynomials in the components of `u` of total degree below
/// `min(2·polar, azimuthal)`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    points: Vec<(UnitVector3, f64)>,
}

impl SphereQuadrature {
    pub const DEFAULT_POLAR: usize = 24;
    pub const DEFAULT_AZIMUTHAL: usize = 48;

    pub fn new(polar: usize, azimuthal: usize) -> Self {
        assert!(polar >= 1 && azimuthal >= 1);
        let (nodes, weights) = gauss_legendre(polar);
        let mut points = Vec::with_capacity(polar * azimuthal);
        for (z, w) in nodes.iter().zip(&weights) {
            let r = (1.0 - z * z).max(0.0).sqrt();
            for k in 0..azimuthal {
                let (s, c) = (TAU * k as f64 / azimuthal as f64).sin_cos();
                let u = UnitVector3::new(r * c, r * s, *z).expect("point on sphere");
                points.push((u, w / (2.0 * azimuthal as f64)));
            }
        }
        Self { points }
    }

    /// Rule with `order` polar nodes and `2·order` azimuthal nodes.
    pub fn with_order(order: usize) -> Self {
        Self::new(order, 2 * order)
    }

    pub fn points(&self) -> &[(UnitVector3, f64)] {
        &self.points
    }

    /// Mean of `f` over the uniform sphere.
    pub fn mean<F: FnMut(&UnitVector3) -> f64>(&self, mut f: F) -> f64 {
        self.points.iter().map(|(u, w)| w * f(u)).sum()
    }
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        Self::new(Self::DEFAULT_POLAR, Self::DEFAULT_AZIMUTHAL)
    }
}

/// Equally spaced angles `offset + 2πk/n`, k = 0..n.
pub fn circle_nodes(n: usize, offset: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| offset + TAU * k as f64 / n as f64)
}
