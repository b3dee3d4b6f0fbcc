use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A CGF was queried outside its finiteness domain.
    #[error("theta = {theta} is outside the CGF domain ({lower}, {upper})")]
    Domain { theta: f64, lower: f64, upper: f64 },

    /// Argument outside the admissible range, or a rate that is infinite.
    #[error("out of range: {0}")]
    Range(String),

    #[error("no convergence after {iterations} iterations: {what}")]
    Convergence { what: String, iterations: usize },

    /// Inputs for which the requested quantity is undefined (zero variance and the like).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("sample budget of {cap} observations exceeded")]
    BudgetExceeded { cap: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the command-line front end: 2 for configuration
    /// and usage problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidParameter(_) | Error::Io(_) => 2,
            Error::Domain { .. }
            | Error::Range(_)
            | Error::Convergence { .. }
            | Error::Degenerate(_)
            | Error::BudgetExceeded { .. } => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
