//! Correlators by direct numerical integration of the joint tables over ρ(λ),
//! independent of the closed forms in `analytic`.

use crate::error::ModelError;
use crate::geometry::{gauss_legendre, SphereQuadrature, UnitVector3};
use crate::models::{fhv_joint, qm_joint, shv_joint, thv_joint, ModelParams, PSpec, Settings};

/// ⟨(a·u)³(b·u)³⟩ over the uniform sphere, by product quadrature of the given order.
pub fn sphere_moment_oracle(a: &UnitVector3, b: &UnitVector3, order: usize) -> f64 {
    SphereQuadrature::with_order(order).mean(|u| (a.dot(u) * b.dot(u)).powi(3))
}

/// Σ στ P̄(σ,τ), with P̄ the joint table averaged over λ by quadrature.
pub fn quadrature_correlator(params: &ModelParams, s: &Settings, order: usize) -> Result<f64, ModelError> {
    let quad = SphereQuadrature::with_order(order);
    match params {
        ModelParams::Qm => Ok(qm_joint(s).correlator()),
        ModelParams::Thv(m) => {
            let mut acc = 0.0;
            for (u, w) in quad.points() {
                acc += w * thv_joint(m, u, s)?.correlator();
            }
            Ok(acc)
        }
        ModelParams::Fhv(m) => {
            let mut acc = 0.0;
            for (u, wu) in quad.points() {
                for (v, wv) in quad.points() {
                    acc += wu * wv * fhv_joint(m, u, v, s)?.correlator();
                }
            }
            Ok(acc)
        }
        ModelParams::Shv(m) => match *m.p_spec() {
            PSpec::Constant { p0 } => Ok(shv_joint(m, &p0, s)?.correlator()),
            PSpec::Cap { p_m, axis, half_angle } => {
                // Gauss–Legendre in cos θ over [cos α, 1], trapezoid in azimuth
                let (nodes, weights) = gauss_legendre(order);
                let lo = half_angle.cos();
                let half = (1.0 - lo) / 2.0;
                let az = 2 * order;
                let e1 = axis.any_orthogonal();
                let e2 = axis.cross(&e1);
                let mut acc = 0.0;
                for (x, w) in nodes.iter().zip(&weights) {
                    let z = lo + half * (x + 1.0);
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    for k in 0..az {
                        let (sn, cs) = (std::f64::consts::TAU * k as f64 / az as f64).sin_cos();
                        let dir = axis.as_vec() * z + e1.as_vec() * (r * cs) + e2 * (r * sn);
                        let p = dir * (p_m / dir.norm());
                        acc += (w / 2.0) / az as f64 * shv_joint(m, &p, s)?.correlator();
                    }
                }
                Ok(acc)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::analytic_correlator;
    use crate::geometry::{sample_unit_uniform, stream, Plane};
    use crate::models::Shv;

    /// ⟨(a·u)³(b·u)³⟩ by full Isserlis contraction of the sixth moment
    /// ⟨u_i…u_n⟩ = (sum over the 15 pairings of δ products)/105.
    fn isserlis_sixth(a: &UnitVector3, b: &UnitVector3) -> f64 {
        let v = [
            a.as_vec().to_array(),
            a.as_vec().to_array(),
            a.as_vec().to_array(),
            b.as_vec().to_array(),
            b.as_vec().to_array(),
            b.as_vec().to_array(),
        ];
        fn pairings(rest: &[usize]) -> Vec<Vec<(usize, usize)>> {
            if rest.is_empty() {
                return vec![vec![]];
            }
            let first = rest[0];
            let mut out = Vec::new();
            for k in 1..rest.len() {
                let mut remaining: Vec<usize> = rest[1..].to_vec();
                let partner = remaining.remove(k - 1);
                for mut p in pairings(&remaining) {
                    p.push((first, partner));
                    out.push(p);
                }
            }
            out
        }
        let all = pairings(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(all.len(), 15);
        let dot = |i: usize, j: usize| (0..3).map(|k| v[i][k] * v[j][k]).sum::<f64>();
        all.iter().map(|p| p.iter().map(|&(i, j)| dot(i, j)).product::<f64>()).sum::<f64>() / 105.0
    }

    #[test]
    fn sixth_moment_examples() {
        let a = UnitVector3::Z;
        assert!((sphere_moment_oracle(&a, &a, 12) - 1.0 / 7.0).abs() < 1e-14);
        assert!(sphere_moment_oracle(&UnitVector3::X, &UnitVector3::Y, 12).abs() < 1e-15);
        let (a, b) = crate::geometry::vectors_in_plane(&Plane::xy(), 0.3, std::f64::consts::FRAC_PI_3);
        assert!((sphere_moment_oracle(&a, &b, 12) - 0.05).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_pairing_contraction() {
        let mut rng = stream(31, 0);
        for _ in 0..200 {
            let (a, b) = (sample_unit_uniform(&mut rng), sample_unit_uniform(&mut rng));
            let x = a.dot(&b);
            let contraction = isserlis_sixth(&a, &b);
            assert!((contraction - (3.0 * x / 35.0 + 2.0 * x.powi(3) / 35.0)).abs() < 1e-14);
            assert!((sphere_moment_oracle(&a, &b, 12) - contraction).abs() < 1e-13);
        }
    }

    #[test]
    fn quadrature_correlators_match_closed_forms() {
        let mut rng = stream(32, 0);
        let cap =
            Shv::new(PSpec::Cap { p_m: 0.9, axis: UnitVector3::new(0.1, 0.5, 0.2).unwrap(), half_angle: 0.8 }).unwrap();
        let models = [
            ModelParams::Qm,
            ModelParams::fhv(0.6).unwrap(),
            ModelParams::thv(1.3).unwrap(),
            ModelParams::Shv(cap),
            ModelParams::shv_constant(crate::geometry::Vec3::new(0.2, 0.1, -0.3)).unwrap(),
        ];
        for _ in 0..5 {
            let s = Settings::new(sample_unit_uniform(&mut rng), sample_unit_uniform(&mut rng));
            for m in &models {
                let order = if matches!(m, ModelParams::Fhv(_)) { 4 } else { 12 };
                let q = quadrature_correlator(m, &s, order).unwrap();
                assert!((q - analytic_correlator(m, &s)).abs() < 1e-12, "{m:?}");
            }
        }
    }
}
