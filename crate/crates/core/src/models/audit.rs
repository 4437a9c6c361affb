//! Positivity audit for the THV coupling ζ.
//!
//! With v = −u, every THV table entry is (1 ± [a·b − ζ(a·u)³(b·u)³])/4, so
//! positivity is `|a·b − ζ y³ z³| ≤ 1` with y = a·u, z = b·u. Fixing the polar
//! angles θ_a, θ_b of a and b about u, a·b ranges over
//! [cos(θ_a + θ_b), cos(θ_a − θ_b)], and the absolute value of an affine
//! function peaks at an endpoint, so the search runs over (θ_a, θ_b) with a·b
//! at either end of that interval.

use std::f64::consts::PI;

/// Result of the audit: the smallest value of 1 − |a·b − ζ(a·u)³(b·u)³| found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditReport {
    pub zeta: f64,
    pub min_slack: f64,
    /// Polar angles (θ_a, θ_b) of the worst configuration and which end of
    /// the a·b interval it sits on (`true` for cos(θ_a − θ_b)).
    pub argmin: (f64, f64, bool),
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.min_slack >= -1e-12
    }
}

const GRID: usize = 121;

fn slack(zeta: f64, ta: f64, tb: f64, aligned: bool) -> f64 {
    let x = if aligned { (ta - tb).cos() } else { (ta + tb).cos() };
    let (y, z) = (ta.cos(), tb.cos());
    1.0 - (x - zeta * (y * z).powi(3)).abs()
}

pub fn thv_positivity_audit(zeta: f64) -> AuditReport {
    let step = PI / (GRID - 1) as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0, true);
    for aligned in [true, false] {
        for i in 0..GRID {
            for j in 0..GRID {
                let (ta, tb) = (i as f64 * step, j as f64 * step);
                let s = slack(zeta, ta, tb, aligned);
                if s < best.0 {
                    best = (s, ta, tb, aligned);
                }
            }
        }
    }
    // pattern-search descent from the best grid node
    let (mut s, mut ta, mut tb, aligned) = best;
    let mut h = step;
    while h > 1e-12 {
        let mut improved = false;
        for (da, db) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h), (h, h), (-h, -h), (h, -h), (-h, h)] {
            let (na, nb) = ((ta + da).clamp(0.0, PI), (tb + db).clamp(0.0, PI));
            let ns = slack(zeta, na, nb, aligned);
            if ns < s {
                (s, ta, tb) = (ns, na, nb);
                improved = true;
            }
        }
        if !improved {
            h /= 2.0;
        }
    }
    AuditReport { zeta, min_slack: s, argmin: (ta, tb, aligned) }
}
