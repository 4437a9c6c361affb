//! Outcome probabilities for the three local hidden-variable families, the
//! singlet reference, and the classical comparison classes.

mod audit;
mod joint;
mod malus;
mod params;
mod reference;
mod table;

pub use audit::{thv_positivity_audit, AuditReport};
pub use joint::{
    fhv_conditional, fhv_joint, joint, qm_joint, sample_hidden, shv_joint, thv_joint, HiddenState, Settings,
};
pub use malus::{malus_check, malus_check_lhv, MalusReport};
pub use params::{BiasFunction, Family, Fhv, ModelParams, PSpec, Shv, Thv};
pub use reference::{bhv_product_joint, bhv_table, lhv_correlation_range, lhv_malus_joint};
pub use table::{sample_outcomes, Outcome, Party, ProbabilityTable, TABLE_TOL};
