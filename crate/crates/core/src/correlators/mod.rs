//! Correlators ⟨στ⟩: closed forms, Monte-Carlo and quadrature estimators,
//! and in-plane orientation averages.

mod analytic;
mod monte_carlo;
mod plane;
mod quadrature;

pub use analytic::{analytic_correlator, correlator_fn, depends_only_on_angle, thv_correlator};
pub use monte_carlo::{mc_correlator, MCEstimate, MIN_SAMPLES};
pub use plane::{plane_avg_correlator, PlaneAverageSpec};
pub use quadrature::{quadrature_correlator, sphere_moment_oracle};
