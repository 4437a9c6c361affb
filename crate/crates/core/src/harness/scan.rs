use serde::Serialize;

use super::config::{RunConfig, ScanConfig};
use crate::error::HarnessError;
use crate::inequalities::{
    margin, max_violation, with_variable, Inequality, InequalityReport, MarginCurve, ScanVariable,
};

/// One CSV row. Field order and names are the frozen column layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub variable: &'static str,
    pub value_of_variable: f64,
    pub inequality: &'static str,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
}

pub const CSV_HEADER: &str = "variable,value_of_variable,inequality,value,bound,margin,violated";

fn row(scan: &ScanConfig, x: f64, r: &InequalityReport) -> ScanRow {
    ScanRow {
        variable: scan.variable.name(),
        value_of_variable: x,
        inequality: scan.inequality.name(),
        value: r.value,
        bound: r.bound,
        margin: r.margin,
        violated: r.violated,
    }
}

/// Evaluates the scan block on `steps` equally spaced nodes, endpoints included.
pub fn run_scan(config: &RunConfig) -> Result<Vec<ScanRow>, HarnessError> {
    let scan = config.scan.ok_or_else(|| HarnessError::Config("task scan needs a scan block".into()))?;
    let params = config.model.params()?;
    let (lo, hi) = (scan.start.0, scan.end.0);
    let mut rows = Vec::with_capacity(scan.steps);
    for i in 0..scan.steps {
        let x = if i + 1 == scan.steps { hi } else { lo + (hi - lo) * i as f64 / (scan.steps - 1) as f64 };
        let report = if scan.variable == ScanVariable::Phi {
            if scan.inequality == Inequality::Chsh {
                return Err(HarnessError::Config("CHSH has no angle to scan".into()));
            }
            margin(scan.inequality, &params, x)
        } else {
            let p = with_variable(&params, scan.variable, x)?;
            let phi = match (scan.phi, scan.inequality) {
                (_, Inequality::Chsh) => 0.0,
                (Some(phi), _) => phi.0,
                (None, ineq) => {
                    max_violation(&MarginCurve::over_phi(ineq, p), (0.0, std::f64::consts::PI), 1e-10)?.argmax
                }
            };
            margin(scan.inequality, &p, phi)
        };
        rows.push(row(&scan, x, &report));
    }
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[ScanRow], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
