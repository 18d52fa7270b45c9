use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the simulator, the ODE engine and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An engine operation was invoked outside its contract. Always a logic bug
    /// in the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("clean-up failed after {steps} extra steps: {reason}")]
    CleanupFailed { steps: u64, reason: String },

    #[error("numerical failure at s = {s}: non-finite derivative for state {state:?}")]
    Numerical { s: f64, state: Vec<f64> },

    #[error("state outside the integration domain at s = {s}: {reason}")]
    Domain { s: f64, reason: String },

    #[error("no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("format error on {path}: {message}")]
    Format { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
