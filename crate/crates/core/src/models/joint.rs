use rand::Rng;
use serde::{Deserialize, Serialize};

use super::params::{Fhv, ModelParams, PSpec, Shv, Thv};
use super::table::{Outcome, ProbabilityTable};
use crate::error::ModelError;
use crate::geometry::{sample_cap_uniform, sample_unit_uniform, UnitVector3, Vec3};

/// Detector settings Σ = {a, b}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub a: UnitVector3,
    pub b: UnitVector3,
}

impl Settings {
    pub fn new(a: UnitVector3, b: UnitVector3) -> Self {
        Self { a, b }
    }
}

/// One draw λ of the hidden variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HiddenState {
    /// λ = {u, v} (FHV, THV).
    Vectors { u: UnitVector3, v: UnitVector3 },
    /// Abstract λ carrying the vector p(λ) (SHV).
    Carrier { p: Vec3 },
    /// No hidden variables (the quantum reference).
    Empty,
}

/// 1/4 + {η[σ f(u·a) + τ f(v·b)] − στ a·b} / (4(1+η)).
pub fn fhv_joint(m: &Fhv, u: &UnitVector3, v: &UnitVector3, s: &Settings) -> Result<ProbabilityTable, ModelError> {
    let fa = m.f_a().eval(u.dot(&s.a));
    let fb = m.f_b().eval(v.dot(&s.b));
    let ab = s.a.dot(&s.b);
    let eta = m.eta();
    ProbabilityTable::from_fn(|sg, tg| 0.25 + (eta * (sg * fa + tg * fb) - sg * tg * ab) / (4.0 * (1.0 + eta)))
}

/// P(σ | τ) for the FHV model written out in closed form, independent of the table.
pub fn fhv_conditional(m: &Fhv, u: &UnitVector3, v: &UnitVector3, s: &Settings, sigma: Outcome, tau: Outcome) -> f64 {
    let eta = m.eta();
    let fa = m.f_a().eval(u.dot(&s.a));
    let fb = m.f_b().eval(v.dot(&s.b));
    let ab = s.a.dot(&s.b);
    let (sg, tg) = (sigma.sign(), tau.sign());
    0.5 * (1.0 + sg * (eta * fa - tg * ab) / (1.0 + eta + eta * tg * fb))
}

/// 1/4 − στ[a·b + (a×b)·p] / (4√(1 + p_m²)).
pub fn shv_joint(m: &Shv, p: &Vec3, s: &Settings) -> Result<ProbabilityTable, ModelError> {
    let p_m = m.p_max();
    let norm = p.norm();
    if norm > p_m + 1e-12 {
        return Err(ModelError::PExceedsSupremum { norm, p_m });
    }
    let corr = s.a.dot(&s.b) + s.a.cross(&s.b).dot(p);
    let denom = 4.0 * m.norm_factor();
    ProbabilityTable::from_fn(|sg, tg| 0.25 - sg * tg * corr / denom)
}

/// 1/4 − στ[a·b + ζ(a·u)³(b·v)³]/4 with v = −u.
pub fn thv_joint(m: &Thv, u: &UnitVector3, s: &Settings) -> Result<ProbabilityTable, ModelError> {
    let v = -*u;
    let corr = s.a.dot(&s.b) + m.zeta() * (s.a.dot(u) * s.b.dot(&v)).powi(3);
    ProbabilityTable::from_fn(|sg, tg| 0.25 - sg * tg * corr / 4.0)
}

/// Singlet prediction (1 − στ a·b)/4.
pub fn qm_joint(s: &Settings) -> ProbabilityTable {
    let ab = s.a.dot(&s.b);
    ProbabilityTable::from_fn(|sg, tg| (1.0 - sg * tg * ab) / 4.0).expect("singlet table is always valid")
}

/// Joint table of any parametric model at a given hidden state.
pub fn joint(params: &ModelParams, h: &HiddenState, s: &Settings) -> Result<ProbabilityTable, ModelError> {
    match (params, h) {
        (ModelParams::Fhv(m), HiddenState::Vectors { u, v }) => fhv_joint(m, u, v, s),
        (ModelParams::Shv(m), HiddenState::Carrier { p }) => shv_joint(m, p, s),
        (ModelParams::Thv(m), HiddenState::Vectors { u, v }) => {
            if *v != -*u {
                return Err(ModelError::ThvSupport);
            }
            thv_joint(m, u, s)
        }
        (ModelParams::Qm, _) => Ok(qm_joint(s)),
        (p, _) => Err(ModelError::HiddenStateMismatch(p.family().name())),
    }
}

/// Draws λ from ρ(λ). Takes no settings: the distribution cannot depend on them.
pub fn sample_hidden<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> HiddenState {
    match params {
        ModelParams::Fhv(_) => HiddenState::Vectors { u: sample_unit_uniform(rng), v: sample_unit_uniform(rng) },
        ModelParams::Thv(_) => {
            let u = sample_unit_uniform(rng);
            HiddenState::Vectors { u, v: -u }
        }
        ModelParams::Shv(m) => match *m.p_spec() {
            PSpec::Constant { p0 } => HiddenState::Carrier { p: p0 },
            PSpec::Cap { p_m, axis, half_angle } => {
                HiddenState::Carrier { p: sample_cap_uniform(rng, &axis, half_angle).as_vec() * p_m }
            }
        },
        ModelParams::Qm => HiddenState::Empty,
    }
}
