use serde::{Deserialize, Serialize};

use super::values::{branciard_bound, branciard_value, chsh_bound, chsh_value, leggett_bound, leggett_value_default};
use crate::correlators::correlator_fn;
use crate::geometry::{chsh_optimal_settings, ChshSettings};
use crate::models::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    Chsh,
    Leggett,
    Branciard,
}

impl Inequality {
    pub fn name(self) -> &'static str {
        match self {
            Inequality::Chsh => "chsh",
            Inequality::Leggett => "leggett",
            Inequality::Branciard => "branciard",
        }
    }
}

/// Where an inequality was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Configuration {
    Settings(ChshSettings),
    Angle { phi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: Inequality,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
    pub configuration: Configuration,
}

impl InequalityReport {
    pub fn new(name: Inequality, value: f64, bound: f64, configuration: Configuration) -> Self {
        let margin = value - bound;
        Self { name, value, bound, margin, violated: margin > 0.0, configuration }
    }
}

pub fn chsh_report(params: &ModelParams, settings: &ChshSettings) -> InequalityReport {
    let value = chsh_value(correlator_fn(params), settings);
    InequalityReport::new(Inequality::Chsh, value, chsh_bound(), Configuration::Settings(*settings))
}

/// Value, bound, and margin of `inequality`. CHSH is evaluated at the
/// quantum-optimal settings and ignores `phi`.
pub fn margin(inequality: Inequality, params: &ModelParams, phi: f64) -> InequalityReport {
    match inequality {
        Inequality::Chsh => chsh_report(params, &chsh_optimal_settings()),
        Inequality::Leggett => InequalityReport::new(
            inequality,
            leggett_value_default(params, phi),
            leggett_bound(phi),
            Configuration::Angle { phi },
        ),
        Inequality::Branciard => InequalityReport::new(
            inequality,
            branciard_value(params, phi),
            branciard_bound(phi),
            Configuration::Angle { phi },
        ),
    }
}
