//! CHSH, Leggett, and Branciard parameters, their classical bounds, and
//! searches for violation windows, maximal violations, and thresholds.

pub mod closed_form;
mod report;
mod search;
mod values;

pub use report::{chsh_report, margin, Configuration, Inequality, InequalityReport};
pub use search::{
    max_violation, threshold, violation_window, with_variable, MarginCurve, MaxViolation, PhiChoice, ScanVariable,
    ViolationWindow, SCAN_NODES,
};
pub use values::{
    branciard_bound, branciard_value, branciard_value_on, branciard_value_shortcut, chsh_bound, chsh_value,
    leggett_bound, leggett_planes, leggett_value, leggett_value_default, CHSH_BOUND,
};
