//! Scans, violation windows, maximizers, and thresholds of a margin curve.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{margin, Inequality};
use crate::error::InequalityError;
use crate::geometry::UnitVector3;
use crate::models::{Fhv, ModelParams, PSpec, Shv, Thv};

/// Grid size for bracketing scans; any violation window wider than
/// (domain width)/512 is seen by at least one node.
pub const SCAN_NODES: usize = 513;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVariable {
    Phi,
    Eta,
    Zeta,
    #[serde(rename = "p_m")]
    Pm,
}

impl ScanVariable {
    pub fn name(self) -> &'static str {
        match self {
            ScanVariable::Phi => "phi",
            ScanVariable::Eta => "eta",
            ScanVariable::Zeta => "zeta",
            ScanVariable::Pm => "p_m",
        }
    }
}

/// Replaces the parameter named by `var` in `params`.
pub fn with_variable(params: &ModelParams, var: ScanVariable, x: f64) -> Result<ModelParams, InequalityError> {
    let p = match (params, var) {
        (ModelParams::Fhv(m), ScanVariable::Eta) => ModelParams::Fhv(Fhv::with_parties(x, *m.f_a(), *m.f_b())?),
        (ModelParams::Thv(_), ScanVariable::Zeta) => ModelParams::Thv(Thv::new(x)?),
        (ModelParams::Shv(m), ScanVariable::Pm) => {
            let spec = match *m.p_spec() {
                PSpec::Constant { p0 } => {
                    let dir = UnitVector3::normalize(p0).unwrap_or(UnitVector3::Z);
                    PSpec::Constant { p0: dir.as_vec() * x }
                }
                PSpec::Cap { axis, half_angle, .. } => PSpec::Cap { p_m: x, axis, half_angle },
            };
            ModelParams::Shv(Shv::new(spec)?)
        }
        (p, v) => {
            return Err(InequalityError::InvalidArgument(format!(
                "variable {} is not a parameter of the {} model",
                v.name(),
                p.family().name()
            )))
        }
    };
    Ok(p)
}

/// How φ is chosen when the scanned variable is a model parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiChoice {
    Fixed(f64),
    /// Maximize the margin over φ ∈ [0, π].
    Optimal,
}

/// Margin of an inequality as a function of one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginCurve {
    pub inequality: Inequality,
    pub params: ModelParams,
    pub variable: ScanVariable,
    pub phi: PhiChoice,
}

impl MarginCurve {
    pub fn over_phi(inequality: Inequality, params: ModelParams) -> Self {
        Self { inequality, params, variable: ScanVariable::Phi, phi: PhiChoice::Optimal }
    }

    pub fn eval(&self, x: f64) -> Result<f64, InequalityError> {
        if self.variable == ScanVariable::Phi {
            if self.inequality == Inequality::Chsh {
                return Err(InequalityError::InvalidArgument("CHSH has no angle variable".into()));
            }
            return Ok(margin(self.inequality, &self.params, x).margin);
        }
        let p = with_variable(&self.params, self.variable, x)?;
        Ok(match self.phi {
            PhiChoice::Fixed(phi) => margin(self.inequality, &p, phi).margin,
            PhiChoice::Optimal if self.inequality == Inequality::Chsh => margin(self.inequality, &p, 0.0).margin,
            PhiChoice::Optimal => {
                max_violation(&MarginCurve::over_phi(self.inequality, p), (0.0, std::f64::consts::PI), 1e-10)?.margin
            }
        })
    }
}

fn grid(domain: (f64, f64), nodes: usize) -> Vec<f64> {
    let (lo, hi) = domain;
    (0..nodes).map(|i| if i + 1 == nodes { hi } else { lo + (hi - lo) * i as f64 / (nodes - 1) as f64 }).collect()
}

fn scan(curve: &MarginCurve, xs: &[f64]) -> Result<Vec<f64>, InequalityError> {
    xs.par_iter().map(|&x| curve.eval(x)).collect()
}

/// Root of `f` in [lo, hi] given f(lo) ≤ 0 < f(hi) or the reverse.
fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, InequalityError>
where
    F: Fn(f64) -> Result<f64, InequalityError>,
{
    let lo_positive = f(lo)? > 0.0;
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid)? > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViolationWindow {
    pub variable: ScanVariable,
    pub lower: f64,
    pub upper: f64,
    pub empty: bool,
}

/// The contiguous region of positive margin around the best scan node.
pub fn violation_window(curve: &MarginCurve, domain: (f64, f64), tol: f64) -> Result<ViolationWindow, InequalityError> {
    let xs = grid(domain, SCAN_NODES);
    let ms = scan(curve, &xs)?;
    let (best, &best_m) = ms.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty grid");
    if best_m <= 0.0 {
        return Ok(ViolationWindow { variable: curve.variable, lower: f64::NAN, upper: f64::NAN, empty: true });
    }
    let f = |x| curve.eval(x);
    let mut left = best;
    while left > 0 && ms[left - 1] > 0.0 {
        left -= 1;
    }
    let mut right = best;
    while right + 1 < xs.len() && ms[right + 1] > 0.0 {
        right += 1;
    }
    let lower = if left == 0 { xs[0] } else { bisect(f, xs[left - 1], xs[left], tol)? };
    let upper = if right + 1 == xs.len() { xs[right] } else { bisect(f, xs[right], xs[right + 1], tol)? };
    Ok(ViolationWindow { variable: curve.variable, lower, upper, empty: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxViolation {
    pub argmax: f64,
    pub margin: f64,
}

/// Golden-section search around the best scan node, finished by bisection on
/// the sign of a central-difference derivative (golden section alone stalls
/// near √ε in the argument).
pub fn max_violation(curve: &MarginCurve, domain: (f64, f64), tol: f64) -> Result<MaxViolation, InequalityError> {
    let xs = grid(domain, SCAN_NODES);
    let ms = scan(curve, &xs)?;
    let (best, _) = ms.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty grid");
    let mut a = xs[best.saturating_sub(1)];
    let mut b = xs[(best + 1).min(xs.len() - 1)];
    let f = |x: f64| curve.eval(x);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > 1e-6_f64.max(tol) {
        if fc > fd {
            b = d;
            (d, fd) = (c, fc);
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            (c, fc) = (d, fd);
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let mut x = 0.5 * (a + b);

    let h = 1e-5;
    let slope = |x: f64| -> Result<f64, InequalityError> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let (mut lo, mut hi) = ((x - 4e-6).max(domain.0 + h), (x + 4e-6).min(domain.1 - h));
    if lo < hi && slope(lo)? > 0.0 && slope(hi)? < 0.0 {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if slope(mid)? > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if mid == lo && mid == hi {
                break;
            }
        }
        x = 0.5 * (lo + hi);
    }
    // a boundary maximum beats any interior stationary point
    let mut out = MaxViolation { argmax: x, margin: f(x)? };
    for (&xe, &me) in [(xs.first(), ms.first()), (xs.last(), ms.last())].iter().filter_map(|(x, m)| x.zip(*m)) {
        if me > out.margin {
            out = MaxViolation { argmax: xe, margin: me };
        }
    }
    Ok(out)
}

/// Root of the margin in the curve's variable, bracketed by a coarse scan and
/// refined by bisection.
pub fn threshold(curve: &MarginCurve, domain: (f64, f64), nodes: usize, tol: f64) -> Result<f64, InequalityError> {
    let xs = grid(domain, nodes.max(2));
    let ms = scan(curve, &xs)?;
    let changes: Vec<usize> = (0..xs.len() - 1).filter(|&i| (ms[i] > 0.0) != (ms[i + 1] > 0.0)).collect();
    match changes.as_slice() {
        [] => Err(InequalityError::NoSignChange { lo: domain.0, hi: domain.1 }),
        [i] => bisect(|x| curve.eval(x), xs[*i], xs[i + 1], tol),
        _ => Err(InequalityError::InvalidArgument(format!(
            "margin is not monotone in {}: {} sign changes",
            curve.variable.name(),
            changes.len()
        ))),
    }
}
