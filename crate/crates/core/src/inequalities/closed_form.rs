//! Closed-form predictions for every inequality and model family, including
//! the printed forms known to disagree with direct evaluation.

use std::f64::consts::{PI, SQRT_2};

pub fn chsh_qm() -> f64 {
    2.0 * SQRT_2
}

pub fn chsh_fhv(eta: f64) -> f64 {
    chsh_qm() / (1.0 + eta)
}

pub fn chsh_fhv_eta_threshold() -> f64 {
    SQRT_2 - 1.0
}

pub fn chsh_shv(p_m: f64) -> f64 {
    chsh_qm() / (1.0 + p_m * p_m).sqrt()
}

/// E^T at the quantum-optimal settings, from the THV correlator.
pub fn chsh_thv_derived(zeta: f64) -> f64 {
    2.0 * SQRT_2 - 8.0 * SQRT_2 * zeta / 35.0
}

/// The printed THV form 2√2 − ζ/(3√2).
pub fn chsh_thv_printed(zeta: f64) -> f64 {
    2.0 * SQRT_2 - zeta / (3.0 * SQRT_2)
}

pub fn chsh_thv_zeta_threshold_derived() -> f64 {
    35.0 * (2.0 - SQRT_2) / 8.0
}

pub fn chsh_thv_zeta_threshold_printed() -> f64 {
    12.0 - 6.0 * SQRT_2
}

/// Decimal printed next to 12 − 6√2; the exact value is 3.5147.
pub const CHSH_THV_PRINTED_DECIMAL: f64 = 3.5417;

pub fn leggett_qm(phi: f64) -> f64 {
    2.0 * (1.0 + phi.cos())
}

/// Upper end of the QM violation window, 2 arcsin(1/π).
pub fn leggett_qm_window_upper() -> f64 {
    2.0 * (1.0 / PI).asin()
}

/// φ_m = 2 arcsin(1/(2π)).
pub fn leggett_qm_argmax() -> f64 {
    2.0 * (1.0 / (2.0 * PI)).asin()
}

pub fn leggett_qm_max_margin() -> f64 {
    1.0 / (PI * PI)
}

/// Roots of (s − (1+η)/(2π))² = (1+η)²/(4π²) − η in s = sin|φ/2|, mapped to φ.
pub fn leggett_fhv_window(eta: f64) -> Option<(f64, f64)> {
    let k = 1.0 + eta;
    let center = k / (2.0 * PI);
    let disc = k * k / (4.0 * PI * PI) - eta;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    let lo = (center - r).max(0.0);
    let hi = (center + r).min(1.0);
    Some((2.0 * lo.asin(), 2.0 * hi.asin()))
}

pub fn leggett_fhv_argmax(eta: f64) -> f64 {
    2.0 * ((1.0 + eta) / (2.0 * PI)).asin()
}

pub fn leggett_fhv_max_margin(eta: f64) -> f64 {
    -4.0 * eta / (1.0 + eta) + (1.0 + eta) / (PI * PI)
}

pub fn leggett_fhv_eta_threshold() -> f64 {
    2.0 * PI * PI - 1.0 - 2.0 * PI * (PI * PI - 1.0).sqrt()
}

/// F^S on planes normal-parallel and orthogonal to p̄.
pub fn leggett_shv(phi: f64, p_mean_norm: f64, p_m: f64) -> f64 {
    (2.0 * (1.0 + phi.cos()) + p_mean_norm * phi.sin()) / (1.0 + p_m * p_m).sqrt()
}

/// THV threshold on ζ at φ = φ_m.
pub fn leggett_thv_zeta_threshold() -> f64 {
    let (p2, p4, p6) = (PI.powi(2), PI.powi(4), PI.powi(6));
    70.0 * p4 / (40.0 * p6 - 18.0 * p4 + 6.0 * p2 - 1.0)
}

pub fn branciard_qm(phi: f64) -> f64 {
    2.0 * (phi / 2.0).cos().abs()
}

/// Upper end of the QM window in sin|φ/2|.
pub const BRANCIARD_QM_WINDOW_SIN: f64 = 0.6;

/// sin|φ″_m/2| = 1/√10.
pub fn branciard_qm_argmax_sin() -> f64 {
    1.0 / 10f64.sqrt()
}

pub fn branciard_qm_max_margin() -> f64 {
    (2.0 / 3.0) * 10f64.sqrt() - 2.0
}

pub fn branciard_fhv_eta_threshold() -> f64 {
    3.0 / (2.0 * SQRT_2) - 1.0
}

/// sin|φ‴_m/2| = (1+η)/√(9 + (1+η)²).
pub fn branciard_fhv_argmax_sin(eta: f64) -> f64 {
    let k = 1.0 + eta;
    k / (9.0 + k * k).sqrt()
}

pub fn branciard_fhv_max_margin(eta: f64) -> f64 {
    let k = 1.0 + eta;
    (2.0 / 3.0) * (9.0 + k * k).sqrt() / k - 2.0
}

/// Window center in sin|φ/2| from 2cos(φ/2)/(1+η) ≥ 2 − (2/3) sin|φ/2|.
pub fn branciard_fhv_window_center_derived(eta: f64) -> f64 {
    let k2 = (1.0 + eta).powi(2);
    3.0 * k2 / (k2 + 9.0)
}

/// The printed window center (1+η)²/3.
pub fn branciard_fhv_window_center_printed(eta: f64) -> f64 {
    (1.0 + eta).powi(2) / 3.0
}

/// Window in s = sin|φ/2| from (1 + k²/9)s² − (2k²/3)s + k² − 1 ≤ 0, k = 1+η.
pub fn branciard_fhv_window_sin(eta: f64) -> Option<(f64, f64)> {
    let k2 = (1.0 + eta).powi(2);
    let (qa, qb, qc) = (1.0 + k2 / 9.0, -2.0 * k2 / 3.0, k2 - 1.0);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    Some((((-qb - r) / (2.0 * qa)).max(0.0), ((-qb + r) / (2.0 * qa)).min(1.0)))
}

/// THV threshold on ζ at sin|φ/2| = 1/√10.
pub fn branciard_thv_zeta_threshold() -> f64 {
    175.0 * (10.0 - 3.0 * 10f64.sqrt()) / 216.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_decimals() {
        assert!((chsh_fhv_eta_threshold() - 0.4142).abs() < 1e-4);
        assert!((leggett_fhv_eta_threshold() - 0.0267).abs() < 1e-4);
        assert!((branciard_fhv_eta_threshold() - 0.0607).abs() < 1e-4);
        assert!((leggett_thv_zeta_threshold() - 0.1855).abs() < 1e-4);
        assert!((branciard_thv_zeta_threshold() - 0.4158).abs() < 1e-4);
        assert!((leggett_qm_max_margin() - 0.1013).abs() < 1e-4);
        assert!((branciard_qm_max_margin() - 0.1082).abs() < 1e-4);
        // the one printed decimal that does not round from its closed form
        assert!((chsh_thv_zeta_threshold_printed() - 3.5147).abs() < 1e-4);
        assert!((chsh_thv_zeta_threshold_printed() - CHSH_THV_PRINTED_DECIMAL).abs() > 0.02);
    }

    #[test]
    fn branciard_window_at_eta_zero_is_three_fifths() {
        let (lo, hi) = branciard_fhv_window_sin(0.0).unwrap();
        assert!(lo.abs() < 1e-15 && (hi - 0.6).abs() < 1e-15);
        assert!((branciard_fhv_window_center_derived(0.0) - 0.3).abs() < 1e-15);
        assert!((branciard_fhv_window_center_printed(0.0) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn fhv_windows_close_at_threshold() {
        assert!(leggett_fhv_window(leggett_fhv_eta_threshold() + 1e-6).is_none());
        assert!(leggett_fhv_window(leggett_fhv_eta_threshold() - 1e-6).is_some());
        assert!(leggett_fhv_max_margin(leggett_fhv_eta_threshold()).abs() < 1e-14);
        assert!(branciard_fhv_max_margin(branciard_fhv_eta_threshold()).abs() < 1e-14);
    }
}
