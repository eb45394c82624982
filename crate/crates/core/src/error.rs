use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-contract input (dimension mismatch, duplicate points, ...).
    #[error("input error: {0}")]
    Input(String),

    #[error("body unbounded or oracle inconsistent: {0}")]
    Unbounded(String),

    #[error("IVT bracket not found: {0}")]
    NoBracket(String),

    #[error("no inscribed homothet found: {0}")]
    NoHomothet(String),

    /// Section of the unit ball is empty or a single point; carries the probed
    /// interval of non-trivial offsets.
    #[error("section trivial at t = {t} (non-trivial range ({lo}, {hi}))")]
    SectionTrivial { t: f64, lo: f64, hi: f64 },

    #[error("sweep bracket failure: {0}")]
    SweepBracket(String),

    #[error("smoothing failed: {0}")]
    Smoothing(String),

    #[error("cell budget exceeded after {examined} of {total} cells")]
    Budget { examined: u128, total: u128 },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            _ => 3,
        }
    }
}
