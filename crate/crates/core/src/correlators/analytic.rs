use crate::geometry::UnitVector3;
use crate::models::{ModelParams, Settings};

/// THV correlator as a function of x = a·b: −(1 − 3ζ/35)x + (2ζ/35)x³.
pub fn thv_correlator(zeta: f64, x: f64) -> f64 {
    -(1.0 - 3.0 * zeta / 35.0) * x + (2.0 * zeta / 35.0) * x.powi(3)
}

/// Hidden-variable average of ⟨στ⟩ in closed form.
pub fn analytic_correlator(params: &ModelParams, s: &Settings) -> f64 {
    let x = s.a.dot(&s.b);
    match params {
        ModelParams::Fhv(m) => -x / (1.0 + m.eta()),
        ModelParams::Shv(m) => -(x + s.a.cross(&s.b).dot(&m.p_mean())) / m.norm_factor(),
        ModelParams::Thv(m) => thv_correlator(m.zeta(), x),
        ModelParams::Qm => -x,
    }
}

/// `analytic_correlator` as a plain function of two directions.
pub fn correlator_fn(params: &ModelParams) -> impl Fn(&UnitVector3, &UnitVector3) -> f64 + '_ {
    move |a, b| analytic_correlator(params, &Settings::new(*a, *b))
}

/// True when the correlator depends on the settings only through a·b.
pub fn depends_only_on_angle(params: &ModelParams) -> bool {
    match params {
        ModelParams::Shv(m) => m.p_mean().norm() == 0.0,
        _ => true,
    }
}
