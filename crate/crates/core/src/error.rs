use thiserror::Error;

/// Errors surfaced by samplers, kernels, quadrature and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The requested operation is outside the regime it is defined for
    /// (wrong theorem hypotheses, infinite-activity measure where finite
    /// activity is required, and so on).
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("evaluation at a singular point: {0}")]
    Singularity(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("size error: {0}")]
    Size(String),

    /// Adaptive refinement ran out of budget; carries the worst-cell report.
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),

    /// Strict mode escalates truncation warnings to hard errors.
    #[error("support truncation too aggressive: {0}")]
    Truncation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code used by the CLI: 2 for regime/validation
    /// problems, 3 for numerical non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_)
            | Error::UnsupportedRegime(_)
            | Error::Singularity(_)
            | Error::DegenerateSample(_)
            | Error::Size(_)
            | Error::Truncation(_)
            | Error::Config(_) => 2,
            Error::NonConvergence(_) => 3,
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
