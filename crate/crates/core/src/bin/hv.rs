use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hv_core::error::HarnessError;
use hv_core::harness::config::parse_scalar;
use hv_core::harness::{run_and_write, Format, RunConfig, Scalar, Task};
use hv_core::models::Family;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TaskArg {
    Prob,
    Correlator,
    Chsh,
    Leggett,
    Branciard,
    Scan,
    Verify,
}

impl From<TaskArg> for Task {
    fn from(t: TaskArg) -> Self {
        match t {
            TaskArg::Prob => Task::Prob,
            TaskArg::Correlator => Task::Correlator,
            TaskArg::Chsh => Task::Chsh,
            TaskArg::Leggett => Task::Leggett,
            TaskArg::Branciard => Task::Branciard,
            TaskArg::Scan => Task::Scan,
            TaskArg::Verify => Task::Verify,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fhv,
    Shv,
    Thv,
    Qm,
    Bhv,
    Lhv,
}

/// Hidden-variable models of the singlet: probabilities, correlators,
/// inequality margins, parameter scans and the reproduction suite.
#[derive(Debug, Parser)]
#[command(name = "hv", version)]
struct Cli {
    task: TaskArg,
    /// JSON run configuration; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<FamilyArg>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    zeta: Option<f64>,
    /// SHV p_m; rescales p to this supremum (along z when p is unset).
    #[arg(long)]
    pm: Option<f64>,
    /// Angle in radians, or with a `deg`/`rad` suffix.
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    shards: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, HarnessError> {
    let mut c = match &cli.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    c.task = cli.task.into();
    if let Some(m) = cli.model {
        c.model.family = match m {
            FamilyArg::Fhv => Family::Fhv,
            FamilyArg::Shv => Family::Shv,
            FamilyArg::Thv => Family::Thv,
            FamilyArg::Qm => Family::Qm,
            FamilyArg::Bhv => Family::Bhv,
            FamilyArg::Lhv => Family::Lhv,
        };
    }
    if cli.eta.is_some() {
        c.model.eta = cli.eta;
    }
    if cli.zeta.is_some() {
        c.model.zeta = cli.zeta;
    }
    if cli.pm.is_some() {
        c.model.p_m = cli.pm;
    }
    if let Some(phi) = &cli.phi {
        c.settings.phi = Some(Scalar(parse_scalar(phi).map_err(HarnessError::Config)?));
    }
    if let Some(n) = cli.n {
        c.sampling.n = n;
    }
    if let Some(seed) = cli.seed {
        c.sampling.seed = seed;
    }
    if let Some(shards) = cli.shards {
        c.sampling.shards = shards;
    }
    if cli.out.is_some() {
        c.output.path = cli.out.clone();
    }
    if let Some(f) = cli.format {
        c.output.format = Some(match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        });
    }
    c.validate()?;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(&cli).and_then(|c| run_and_write(&c));
    match result {
        Ok(out) if out.succeeded() => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("hv: one or more claims failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("hv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
