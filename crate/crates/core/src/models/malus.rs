use serde::Serialize;

use super::joint::{fhv_joint, qm_joint, shv_joint, thv_joint, Settings};
use super::params::{Family, ModelParams};
use super::reference::{lhv_correlation_range, lhv_malus_joint};
use super::table::{Party, ProbabilityTable};
use crate::error::ModelError;
use crate::geometry::{Plane, UnitVector3};

/// Comparison of a model's single-party marginal with Malus's law (1 + u·a)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MalusReport {
    pub family: Family,
    /// P(σ = +1) when the hidden vector is aligned with the setting.
    pub aligned_marginal: f64,
    /// What Malus's law demands there.
    pub malus_aligned: f64,
    /// max over the u·a grid of |P(+) − (1 + u·a)/2|.
    pub max_deviation: f64,
}

impl MalusReport {
    pub fn complies(&self) -> bool {
        self.max_deviation <= 1e-12
    }
}

const GRID: usize = 201;

fn scan<F>(family: Family, table_at: F) -> Result<MalusReport, ModelError>
where
    F: Fn(UnitVector3, UnitVector3) -> Result<ProbabilityTable, ModelError>,
{
    // a = ẑ, hidden vector at polar angle arccos(x), b fixed at x̂
    let a = UnitVector3::Z;
    let mut max_deviation = 0.0_f64;
    let mut aligned_marginal = f64::NAN;
    for i in 0..GRID {
        let x = -1.0 + 2.0 * i as f64 / (GRID - 1) as f64;
        let u = Plane::zx().direction(x.clamp(-1.0, 1.0).acos());
        let plus = table_at(a, u)?.marginal(Party::A).0;
        max_deviation = max_deviation.max((plus - (1.0 + u.dot(&a)) / 2.0).abs());
        if i == GRID - 1 {
            aligned_marginal = plus;
        }
    }
    Ok(MalusReport { family, aligned_marginal, malus_aligned: 1.0, max_deviation })
}

pub fn malus_check(params: &ModelParams) -> Result<MalusReport, ModelError> {
    let b = UnitVector3::X;
    match params {
        ModelParams::Fhv(m) => scan(Family::Fhv, |a, u| fhv_joint(m, &u, &u, &Settings::new(a, b))),
        ModelParams::Shv(m) => {
            let p = m.p_mean();
            scan(Family::Shv, |a, _| shv_joint(m, &p, &Settings::new(a, b)))
        }
        ModelParams::Thv(m) => scan(Family::Thv, |a, u| thv_joint(m, &u, &Settings::new(a, b))),
        ModelParams::Qm => scan(Family::Qm, |a, _| Ok(qm_joint(&Settings::new(a, b)))),
    }
}

/// The Malus-marginal reference class, which complies by construction.
pub fn malus_check_lhv() -> Result<MalusReport, ModelError> {
    let b = UnitVector3::X;
    scan(Family::Lhv, |a, u| {
        let s = Settings::new(a, b);
        let (lo, _) = lhv_correlation_range(u.dot(&a), b.dot(&b));
        lhv_malus_joint(&u, &b, lo, &s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;

    #[test]
    fn fhv_fails_malus_at_alignment() {
        let r = malus_check(&ModelParams::fhv(1.0).unwrap()).unwrap();
        assert!((r.aligned_marginal - 0.625).abs() < 1e-15);
        assert!(!r.complies());
        // worst point is u·a = 1: |0.625 − 1|
        assert!((r.max_deviation - 0.375).abs() < 1e-12);
    }

    #[test]
    fn shv_and_thv_marginals_are_flat() {
        for params in [ModelParams::shv_constant(Vec3::new(0.1, 0.2, 0.3)).unwrap(), ModelParams::thv(1.0).unwrap()] {
            let r = malus_check(&params).unwrap();
            assert_eq!(r.aligned_marginal, 0.5);
            assert!((r.max_deviation - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn lhv_complies() {
        let r = malus_check_lhv().unwrap();
        assert!(r.complies(), "{r:?}");
        assert!((r.aligned_marginal - 1.0).abs() < 1e-12);
    }
}
