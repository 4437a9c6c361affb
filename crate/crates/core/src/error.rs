use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("basis vectors are not orthogonal (dot product {0:e})")]
    NotOrthogonal(f64),
    #[error("planes are not orthogonal (normal dot product {0:e})")]
    PlanesNotOrthogonal(f64),
}

/// Reasons a model, hidden state, or table is rejected.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("eta must be finite and nonnegative, got {0}")]
    InvalidEta(f64),
    #[error("f violates |f(x)| <= 1/2 on [-1, 1] (max |f| = {max_abs})")]
    FBound { max_abs: f64 },
    #[error("f must be an odd power x^k with k in {{1, 3}}, got k = {0}")]
    UnsupportedPower(u32),
    #[error("f scale must be finite and nonnegative, got {0}")]
    InvalidScale(f64),
    #[error("zeta must be finite and nonnegative, got {0}")]
    InvalidZeta(f64),
    #[error("zeta = {zeta} fails the THV positivity audit (min 1 - |a.b + zeta (a.u)^3 (b.v)^3| = {min_slack:e})")]
    ZetaPositivity { zeta: f64, min_slack: f64 },
    #[error("invalid p(lambda) specification: {0}")]
    InvalidPSpec(String),
    #[error("|p| = {norm} exceeds p_m = {p_m}")]
    PExceedsSupremum { norm: f64, p_m: f64 },
    #[error("THV hidden state must satisfy v = -u")]
    ThvSupport,
    #[error("hidden state does not match the {0} model")]
    HiddenStateMismatch(&'static str),
    #[error("single-party expectation {0} outside [-1, 1]")]
    ExpectationOutOfRange(f64),
    #[error("correlation {c} infeasible: table entry {entry:e} is negative")]
    InfeasibleCorrelation { c: f64, entry: f64 },
    #[error("conditional undefined: conditioning outcome has probability {0:e}")]
    UndefinedConditional(f64),
    #[error("probability table invalid: {0}")]
    InvalidTable(String),
    #[error("sample size {0} below the minimum of {1}")]
    SampleSize(u64, u64),
    #[error("operation not available for the {0} model")]
    UnsupportedFamily(&'static str),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InequalityError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no sign change of the margin in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("{0}")]
    InvalidArgument(String),
}

/// Failures of a harness run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid model: {0}")]
    Model(#[from] ModelError),
    #[error("evaluation failed: {0}")]
    Inequality(#[from] InequalityError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot access {}: {source}", path.display())]
    File { path: std::path::PathBuf, source: std::io::Error },
    #[error("output encoding failed: {0}")]
    Encode(String),
}

impl HarnessError {
    /// 2 for anything wrong with the configuration, 3 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Io(_) | HarnessError::File { .. } | HarnessError::Encode(_) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            HarnessError::Io(e.into())
        } else {
            HarnessError::Encode(e.to_string())
        }
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => HarnessError::Io(io),
            other => HarnessError::Encode(format!("{other:?}")),
        }
    }
}
