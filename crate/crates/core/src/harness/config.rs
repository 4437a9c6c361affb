use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, ModelError};
use crate::geometry::{UnitVector3, Vec3};
use crate::inequalities::{Inequality, ScanVariable};
use crate::models::{BiasFunction, Family, Fhv, HiddenState, ModelParams, PSpec, Shv, Thv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Prob,
    Correlator,
    Chsh,
    Leggett,
    Branciard,
    Scan,
    #[default]
    Verify,
}

/// A real number, or an angle written as a string with a `deg` or `rad` suffix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScalarRepr", into = "f64")]
pub struct Scalar(pub f64);

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<ScalarRepr> for Scalar {
    type Error = String;
    fn try_from(r: ScalarRepr) -> Result<Self, String> {
        match r {
            ScalarRepr::Number(x) => Ok(Scalar(x)),
            ScalarRepr::Text(s) => parse_scalar(&s).map(Scalar),
        }
    }
}

impl From<Scalar> for f64 {
    fn from(s: Scalar) -> f64 {
        s.0
    }
}

/// Parses `0.3`, `0.3rad`, or `30deg`.
pub fn parse_scalar(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (num, factor) = if let Some(v) = t.strip_suffix("deg") {
        (v, std::f64::consts::PI / 180.0)
    } else if let Some(v) = t.strip_suffix("rad") {
        (v, 1.0)
    } else {
        (t, 1.0)
    };
    num.trim().parse::<f64>().map(|x| x * factor).map_err(|_| format!("cannot read {s:?} as a number or angle"))
}

/// Model block. Which fields apply depends on `family`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    /// Bias function for party A (and B unless `f_b` is given).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<BiasFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_b: Option<BiasFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PSpec>,
    /// Rescales the SHV p-field to this supremum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_m: Option<f64>,
    /// BHV single-party expectations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_expect: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_expect: Option<f64>,
    /// LHV hidden vectors and correlation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<UnitVector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<UnitVector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self::family(Family::Qm)
    }
}

impl ModelConfig {
    pub fn family(family: Family) -> Self {
        Self {
            family,
            eta: None,
            f: None,
            f_b: None,
            zeta: None,
            p: None,
            p_m: None,
            a_expect: None,
            b_expect: None,
            u: None,
            v: None,
            c: None,
        }
    }

    /// Builds the parametric model; BHV and LHV have no parametric form.
    pub fn params(&self) -> Result<ModelParams, HarnessError> {
        let p = match self.family {
            Family::Fhv => {
                let f_a = self.f.unwrap_or_default();
                let f_b = self.f_b.unwrap_or(f_a);
                ModelParams::Fhv(Fhv::with_parties(self.eta.unwrap_or(0.0), f_a, f_b)?)
            }
            Family::Shv => {
                let mut spec = self.p.unwrap_or(PSpec::Constant { p0: Vec3::ZERO });
                if let Some(p_m) = self.p_m {
                    spec = rescale(spec, p_m)?;
                }
                ModelParams::Shv(Shv::new(spec)?)
            }
            Family::Thv => ModelParams::Thv(Thv::new(self.zeta.unwrap_or(0.0))?),
            Family::Qm => ModelParams::Qm,
            Family::Bhv | Family::Lhv => return Err(ModelError::UnsupportedFamily(self.family.name()).into()),
        };
        Ok(p)
    }
}

fn rescale(spec: PSpec, p_m: f64) -> Result<PSpec, HarnessError> {
    if !p_m.is_finite() || p_m < 0.0 {
        return Err(ModelError::InvalidPSpec(format!("p_m must be finite and nonnegative, got {p_m}")).into());
    }
    Ok(match spec {
        PSpec::Constant { p0 } => {
            let dir = UnitVector3::normalize(p0).unwrap_or(UnitVector3::Z);
            PSpec::Constant { p0: dir.as_vec() * p_m }
        }
        PSpec::Cap { axis, half_angle, .. } => PSpec::Cap { p_m, axis, half_angle },
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<UnitVector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<UnitVector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_prime: Option<UnitVector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_prime: Option<UnitVector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hidden: Option<HiddenState>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    #[serde(default = "default_n")]
    pub n: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_shards")]
    pub shards: u64,
}

fn default_n() -> u64 {
    1_000_000
}
fn default_shards() -> u64 {
    1
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self { n: default_n(), seed: 0, shards: default_shards() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub inequality: Inequality,
    pub variable: ScanVariable,
    pub start: Scalar,
    pub end: Scalar,
    pub steps: usize,
    /// Fixed angle for parameter scans; the margin-maximizing angle when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Replaces every claim tolerance, including the per-trial Monte-Carlo bands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Draws per trial in the repeated Monte-Carlo consistency claims.
    #[serde(default = "default_trial_n")]
    pub trial_n: u64,
}

fn default_trial_n() -> u64 {
    100_000
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tolerance: None, trial_n: default_trial_n() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub task: Task,
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub settings: SettingsConfig,
    #[serde(default)]
    pub sampling: SamplingConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let c: RunConfig = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_path(path: &Path) -> Result<Self, HarnessError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| HarnessError::File { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.verify.trial_n < 100 {
            return Err(HarnessError::Config("verify.trial_n must be at least 100".into()));
        }
        if self.sampling.n < 1 {
            return Err(HarnessError::Config("sampling.n must be at least 1".into()));
        }
        if let Some(scan) = &self.scan {
            if scan.steps < 2 {
                return Err(HarnessError::Config("scan.steps must be at least 2".into()));
            }
            if !(scan.start.0.is_finite() && scan.end.0.is_finite()) {
                return Err(HarnessError::Config("scan range must be finite".into()));
            }
        }
        if let Some(t) = self.verify.tolerance {
            if t.is_nan() || t < 0.0 {
                return Err(HarnessError::Config("verify.tolerance must be nonnegative".into()));
            }
        }
        Ok(())
    }
}
