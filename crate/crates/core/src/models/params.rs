use serde::{Deserialize, Serialize};

use super::audit::thv_positivity_audit;
use crate::error::ModelError;
use crate::geometry::{UnitVector3, Vec3};

/// Model family tag, covering both the parametric families and the
/// reference classes used for the classical bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fhv,
    Shv,
    Thv,
    Qm,
    Bhv,
    Lhv,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Fhv => "FHV",
            Family::Shv => "SHV",
            Family::Thv => "THV",
            Family::Qm => "QM",
            Family::Bhv => "BHV",
            Family::Lhv => "LHV",
        }
    }
}

/// Outcome-bias function f(x) = c·sign(x)·|x|^k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBias")]
pub struct BiasFunction {
    scale: f64,
    power: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBias {
    scale: f64,
    power: u32,
}

impl TryFrom<RawBias> for BiasFunction {
    type Error = ModelError;

    fn try_from(r: RawBias) -> Result<Self, ModelError> {
        Self::new(r.scale, r.power)
    }
}

impl BiasFunction {
    const GRID: usize = 4001;

    pub fn new(scale: f64, power: u32) -> Result<Self, ModelError> {
        if !scale.is_finite() || scale < 0.0 {
            return Err(ModelError::InvalidScale(scale));
        }
        if power != 1 && power != 3 {
            return Err(ModelError::UnsupportedPower(power));
        }
        let f = Self { scale, power };
        let max_abs = (0..Self::GRID)
            .map(|i| -1.0 + 2.0 * i as f64 / (Self::GRID - 1) as f64)
            .map(|x| f.eval(x).abs())
            .fold(0.0, f64::max);
        if max_abs > 0.5 {
            return Err(ModelError::FBound { max_abs });
        }
        Ok(f)
    }

    /// The default f(x) = x/2.
    pub fn half_linear() -> Self {
        Self { scale: 0.5, power: 1 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.scale * x.signum() * x.abs().powi(self.power as i32)
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
    pub fn power(&self) -> u32 {
        self.power
    }
}

impl Default for BiasFunction {
    fn default() -> Self {
        Self::half_linear()
    }
}

/// First family: outcome bias η·f entering both marginals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fhv {
    eta: f64,
    f_a: BiasFunction,
    f_b: BiasFunction,
}

impl Fhv {
    pub fn new(eta: f64, f: BiasFunction) -> Result<Self, ModelError> {
        Self::with_parties(eta, f, f)
    }

    /// Separate bias functions for the two parties.
    pub fn with_parties(eta: f64, f_a: BiasFunction, f_b: BiasFunction) -> Result<Self, ModelError> {
        if !eta.is_finite() || eta < 0.0 {
            return Err(ModelError::InvalidEta(eta));
        }
        Ok(Self { eta, f_a, f_b })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// ε = η/(1+η), always derived from η.
    pub fn epsilon(&self) -> f64 {
        self.eta / (1.0 + self.eta)
    }

    pub fn f_a(&self) -> &BiasFunction {
        &self.f_a
    }
    pub fn f_b(&self) -> &BiasFunction {
        &self.f_b
    }
}

/// How the SHV vector p(λ) is distributed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PSpec {
    /// p(λ) = p0 for every λ.
    Constant { p0: Vec3 },
    /// p(λ) = p_m·w with w uniform in the cap of half-angle `half_angle` about `axis`.
    Cap { p_m: f64, axis: UnitVector3, half_angle: f64 },
}

impl PSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        match *self {
            PSpec::Constant { p0 } => {
                if !(p0.x.is_finite() && p0.y.is_finite() && p0.z.is_finite()) {
                    return Err(ModelError::InvalidPSpec("p0 must be finite".into()));
                }
            }
            PSpec::Cap { p_m, half_angle, .. } => {
                if !p_m.is_finite() || p_m < 0.0 {
                    return Err(ModelError::InvalidPSpec(format!("p_m must be finite and nonnegative, got {p_m}")));
                }
                if !(0.0..=std::f64::consts::PI).contains(&half_angle) {
                    return Err(ModelError::InvalidPSpec(format!("cap half-angle {half_angle} outside [0, pi]")));
                }
            }
        }
        Ok(())
    }

    /// p_m = sup_λ |p(λ)|.
    pub fn p_max(&self) -> f64 {
        match *self {
            PSpec::Constant { p0 } => p0.norm(),
            PSpec::Cap { p_m, .. } => p_m,
        }
    }

    /// p̄, the mean of p(λ) over the hidden-variable distribution.
    pub fn mean(&self) -> Vec3 {
        match *self {
            PSpec::Constant { p0 } => p0,
            PSpec::Cap { p_m, axis, half_angle } => axis.as_vec() * (p_m * (1.0 + half_angle.cos()) / 2.0),
        }
    }
}

/// Second family: correlation tilted by (a×b)·p(λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Shv {
    p_spec: PSpec,
}

impl Shv {
    pub fn new(p_spec: PSpec) -> Result<Self, ModelError> {
        p_spec.validate()?;
        Ok(Self { p_spec })
    }

    pub fn constant(p0: Vec3) -> Result<Self, ModelError> {
        Self::new(PSpec::Constant { p0 })
    }

    pub fn p_spec(&self) -> &PSpec {
        &self.p_spec
    }
    pub fn p_max(&self) -> f64 {
        self.p_spec.p_max()
    }
    pub fn p_mean(&self) -> Vec3 {
        self.p_spec.mean()
    }
    /// √(1 + p_m²), the normalization of the correlation term.
    pub fn norm_factor(&self) -> f64 {
        (1.0 + self.p_max().powi(2)).sqrt()
    }
}

/// Third family: cubic correlation term with v = −u.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thv {
    zeta: f64,
}

impl Thv {
    /// Rejects ζ unless every table entry stays nonnegative.
    pub fn new(zeta: f64) -> Result<Self, ModelError> {
        if !zeta.is_finite() || zeta < 0.0 {
            return Err(ModelError::InvalidZeta(zeta));
        }
        let audit = thv_positivity_audit(zeta);
        if !audit.passed() {
            return Err(ModelError::ZetaPositivity { zeta, min_slack: audit.min_slack });
        }
        Ok(Self { zeta })
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }
}

/// A fully specified parametric model of the singlet preparation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelParams {
    Fhv(Fhv),
    Shv(Shv),
    Thv(Thv),
    Qm,
}

impl ModelParams {
    pub fn fhv(eta: f64) -> Result<Self, ModelError> {
        Ok(ModelParams::Fhv(Fhv::new(eta, BiasFunction::default())?))
    }

    pub fn shv_constant(p0: Vec3) -> Result<Self, ModelError> {
        Ok(ModelParams::Shv(Shv::constant(p0)?))
    }

    pub fn thv(zeta: f64) -> Result<Self, ModelError> {
        Ok(ModelParams::Thv(Thv::new(zeta)?))
    }

    pub fn family(&self) -> Family {
        match self {
            ModelParams::Fhv(_) => Family::Fhv,
            ModelParams::Shv(_) => Family::Shv,
            ModelParams::Thv(_) => Family::Thv,
            ModelParams::Qm => Family::Qm,
        }
    }
}
