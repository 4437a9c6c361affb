//! Config ingestion, task dispatch, and JSON/CSV emission.

pub mod config;
pub mod scan;
pub mod single;
pub mod verify;

use std::io::Write;

pub use config::{Format, ModelConfig, RunConfig, Scalar, ScanConfig, Task};
pub use scan::{run_scan, write_csv, ScanRow, CSV_HEADER};
pub use single::run_single;
pub use verify::{run_verify, Claim, Status, VerificationReport};

use crate::error::HarnessError;

/// Result of running a task, ready to be written.
#[derive(Debug, Clone)]
pub enum Output {
    Json(serde_json::Value),
    Csv(Vec<ScanRow>),
    Report(VerificationReport),
}

impl Output {
    /// True unless a verify run has failing claims.
    pub fn succeeded(&self) -> bool {
        match self {
            Output::Report(r) => r.succeeded(),
            _ => true,
        }
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<(), HarnessError> {
        match self {
            Output::Json(v) => {
                serde_json::to_writer_pretty(&mut w, v)?;
                writeln!(w)?;
            }
            Output::Report(r) => {
                serde_json::to_writer_pretty(&mut w, r)?;
                writeln!(w)?;
            }
            Output::Csv(rows) => write_csv(rows, &mut w)?,
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs the configured task. Scans emit CSV unless JSON is requested; every
/// other task emits JSON only.
pub fn run(config: &RunConfig) -> Result<Output, HarnessError> {
    config.validate()?;
    let format = config.output.format;
    match config.task {
        Task::Scan => {
            let rows = run_scan(config)?;
            Ok(match format {
                Some(Format::Json) => Output::Json(serde_json::to_value(&rows)?),
                _ => Output::Csv(rows),
            })
        }
        _ if format == Some(Format::Csv) => {
            Err(HarnessError::Config(format!("task {:?} has no CSV form; use json", config.task)))
        }
        Task::Verify => Ok(Output::Report(run_verify(config))),
        _ => Ok(Output::Json(run_single(config)?)),
    }
}

/// Runs the task and writes to `config.output.path`, or stdout when unset.
pub fn run_and_write(config: &RunConfig) -> Result<Output, HarnessError> {
    let out = run(config)?;
    match &config.output.path {
        Some(path) => {
            let file =
                std::fs::File::create(path).map_err(|source| HarnessError::File { path: path.clone(), source })?;
            out.write_to(std::io::BufWriter::new(file))?;
        }
        None => out.write_to(std::io::stdout().lock())?,
    }
    Ok(out)
}
