use std::f64::consts::PI;

use crate::correlators::{analytic_correlator, plane_avg_correlator, PlaneAverageSpec};
use crate::error::GeometryError;
use crate::geometry::{branciard_settings, ChshSettings, Plane, Triad, UnitVector3};
use crate::models::{ModelParams, Settings};

pub const CHSH_BOUND: f64 = 2.0;

/// |C(a,b) + C(a,b′) + C(a′,b) − C(a′,b′)|.
pub fn chsh_value<C>(c: C, s: &ChshSettings) -> f64
where
    C: Fn(&UnitVector3, &UnitVector3) -> f64,
{
    (c(&s.a, &s.b) + c(&s.a, &s.b_prime) + c(&s.a_prime, &s.b) - c(&s.a_prime, &s.b_prime)).abs()
}

pub fn chsh_bound() -> f64 {
    CHSH_BOUND
}

/// |C_p(φ) + C_p(0)| + |C_p′(φ) + C_p′(0)| with plane-averaged correlators.
pub fn leggett_value(params: &ModelParams, p: &Plane, p_prime: &Plane, phi: f64) -> Result<f64, GeometryError> {
    let d = p.normal().dot(&p_prime.normal());
    if !p.is_orthogonal_to(p_prime) {
        return Err(GeometryError::PlanesNotOrthogonal(d));
    }
    let term = |plane: &Plane| {
        let at = |angle| plane_avg_correlator(params, &PlaneAverageSpec::new(*plane, angle));
        (at(phi) + at(0.0)).abs()
    };
    Ok(term(p) + term(p_prime))
}

/// The plane pair used when none is given: for SHV, `p` has its normal along p̄
/// and `p′` contains p̄; otherwise the xy- and zx-planes.
pub fn leggett_planes(params: &ModelParams) -> (Plane, Plane) {
    match params {
        ModelParams::Shv(m) => {
            let axis = UnitVector3::normalize(m.p_mean()).unwrap_or(UnitVector3::Z);
            (Plane::from_normal(axis), Plane::from_normal(axis.any_orthogonal()))
        }
        _ => (Plane::xy(), Plane::zx()),
    }
}

/// Leggett parameter on the default planes. For SHV both orientations of `p`
/// are evaluated and the larger value is returned.
pub fn leggett_value_default(params: &ModelParams, phi: f64) -> f64 {
    let (p, q) = leggett_planes(params);
    let v1 = leggett_value(params, &p, &q, phi).expect("default planes are orthogonal");
    if !matches!(params, ModelParams::Shv(_)) {
        return v1;
    }
    let v2 = leggett_value(params, &p.flipped(), &q, phi).expect("default planes are orthogonal");
    v1.max(v2)
}

pub fn leggett_bound(phi: f64) -> f64 {
    4.0 - (4.0 / PI) * (phi / 2.0).sin().abs()
}

/// (1/3) Σ_i |C(a_i, b_i) + C(a_i, b′_i)| on the explicit triad construction.
pub fn branciard_value_on(params: &ModelParams, triad: &Triad, phi: f64) -> f64 {
    let s = branciard_settings(triad, phi);
    let axes = triad.axes();
    let c = |a: &UnitVector3, b: &UnitVector3| analytic_correlator(params, &Settings::new(*a, *b));
    (0..3).map(|i| (c(&axes[i], &s.b[i]) + c(&axes[i], &s.b_prime[i])).abs()).sum::<f64>() / 3.0
}

pub fn branciard_value(params: &ModelParams, phi: f64) -> f64 {
    branciard_value_on(params, &Triad::standard(), phi)
}

/// 2|C(cos(φ/2))|, valid when the correlator depends only on a·b.
pub fn branciard_value_shortcut(params: &ModelParams, phi: f64) -> f64 {
    let a = UnitVector3::Z;
    let b = Plane::zx().direction(phi / 2.0);
    2.0 * analytic_correlator(params, &Settings::new(a, b)).abs()
}

pub fn branciard_bound(phi: f64) -> f64 {
    2.0 - (2.0 / 3.0) * (phi / 2.0).sin().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::correlator_fn;
    use crate::geometry::{chsh_optimal_settings, Vec3};
    use std::f64::consts::SQRT_2;

    #[test]
    fn chsh_examples() {
        let s = chsh_optimal_settings();
        let qm = ModelParams::Qm;
        assert!((chsh_value(correlator_fn(&qm), &s) - 2.0 * SQRT_2).abs() < 1e-12);
        let fhv = ModelParams::fhv(SQRT_2 - 1.0).unwrap();
        assert!((chsh_value(correlator_fn(&fhv), &s) - 2.0).abs() < 1e-12);
        assert_eq!(chsh_value(|_, _| 0.0, &s), 0.0);
        let shv0 = ModelParams::shv_constant(Vec3::ZERO).unwrap();
        assert!(chsh_value(correlator_fn(&shv0), &s) > chsh_bound());
    }

    #[test]
    fn leggett_examples() {
        let (p, q) = (Plane::xy(), Plane::zx());
        for phi in [0.0, 0.3, 1.0, 2.5] {
            let f = leggett_value(&ModelParams::Qm, &p, &q, phi).unwrap();
            assert!((f - 2.0 * (1.0 + f64::cos(phi))).abs() < 1e-12);
        }
        assert!((leggett_value(&ModelParams::Qm, &p, &q, 0.0).unwrap() - 4.0).abs() < 1e-12);
        assert!(leggett_value(&ModelParams::Qm, &p, &Plane::xy(), 0.2).is_err());
        let shv = ModelParams::shv_constant(Vec3::new(0.0, 0.5, 0.0)).unwrap();
        let f = leggett_value_default(&shv, std::f64::consts::FRAC_PI_4);
        let expect = (2.0 * (1.0 + 0.5f64.sqrt()) + 0.5 * 0.5f64.sqrt()) / 1.25f64.sqrt();
        assert!((f - expect).abs() < 1e-12);
        assert!((f - 3.3699932120840215).abs() < 1e-12);
    }

    #[test]
    fn bounds() {
        assert_eq!(leggett_bound(0.0), 4.0);
        assert!((leggett_bound(PI) - (4.0 - 4.0 / PI)).abs() < 1e-15);
        let phi_m = 2.0 * (1.0 / (2.0 * PI)).asin();
        assert!((leggett_bound(phi_m) - (4.0 - 2.0 / (PI * PI))).abs() < 1e-15);
        assert_eq!(branciard_bound(0.0), 2.0);
        assert!((branciard_bound(PI) - 4.0 / 3.0).abs() < 1e-15);
        let phi2 = 2.0 * (1.0 / 10f64.sqrt()).asin();
        assert!((branciard_bound(phi2) - (2.0 - 2.0 / (3.0 * 10f64.sqrt()))).abs() < 1e-15);
        assert_eq!(leggett_bound(-0.4), leggett_bound(0.4));
    }

    #[test]
    fn branciard_examples() {
        for phi in [0.0, 0.5, 1.7, PI] {
            let g = branciard_value(&ModelParams::Qm, phi);
            assert!((g - 2.0 * (phi / 2.0).cos().abs()).abs() < 1e-12);
            assert!((g - branciard_value_shortcut(&ModelParams::Qm, phi)).abs() < 1e-12);
        }
        assert!((branciard_value(&ModelParams::Qm, 0.0) - 2.0).abs() < 1e-12);
        let shv = ModelParams::shv_constant(Vec3::new(0.3, -0.2, 0.6)).unwrap();
        let ModelParams::Shv(m) = shv else { unreachable!() };
        for phi in [0.2, 1.0, 2.0] {
            let g = branciard_value(&shv, phi);
            assert!((g - 2.0 * (phi / 2.0).cos() / m.norm_factor()).abs() < 1e-12);
        }
    }
}
