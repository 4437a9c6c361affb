//! Reference classes behind the classical bounds: outcome-independent
//! product models (Bell) and Malus-marginal models (Leggett, Branciard).

use super::joint::Settings;
use super::table::ProbabilityTable;
use crate::error::ModelError;
use crate::geometry::UnitVector3;

/// P = [1 + σĀ][1 + τB̄]/4 from single-party expectations Ā, B̄ ∈ [−1, 1].
pub fn bhv_table(a_expect: f64, b_expect: f64) -> Result<ProbabilityTable, ModelError> {
    for e in [a_expect, b_expect] {
        if !e.is_finite() || e.abs() > 1.0 {
            return Err(ModelError::ExpectationOutOfRange(e));
        }
    }
    ProbabilityTable::from_fn(|s, t| (1.0 + s * a_expect) * (1.0 + t * b_expect) / 4.0)
}

/// Product table for response functions `a_fn(λ, a)` and `b_fn(λ, b)`.
pub fn bhv_product_joint<L, FA, FB>(
    a_fn: FA,
    b_fn: FB,
    lambda: &L,
    s: &Settings,
) -> Result<ProbabilityTable, ModelError>
where
    FA: Fn(&L, &UnitVector3) -> f64,
    FB: Fn(&L, &UnitVector3) -> f64,
{
    bhv_table(a_fn(lambda, &s.a), b_fn(lambda, &s.b))
}

/// Feasible range of the correlation C for Malus marginals u·a, v·b.
pub fn lhv_correlation_range(ua: f64, vb: f64) -> (f64, f64) {
    (-1.0 + (ua + vb).abs(), 1.0 - (ua - vb).abs())
}

/// P = [1 + σu·a + τv·b + στC]/4.
pub fn lhv_malus_joint(u: &UnitVector3, v: &UnitVector3, c: f64, s: &Settings) -> Result<ProbabilityTable, ModelError> {
    let (ua, vb) = (u.dot(&s.a), v.dot(&s.b));
    let entries = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .map(|(sg, tg)| (1.0 + sg * ua + tg * vb + sg * tg * c) / 4.0);
    if let Some(&entry) = entries.iter().find(|e| **e < -1e-14) {
        return Err(ModelError::InfeasibleCorrelation { c, entry });
    }
    ProbabilityTable::from_fn(|sg, tg| (1.0 + sg * ua + tg * vb + sg * tg * c) / 4.0)
}
