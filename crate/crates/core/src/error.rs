//! Error types shared across the crate.

use crate::units::QuantityKind;

/// Errors produced by model evaluation, fitting, solving and configuration.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation
    /// (non-positive law input, negative energy, zero opening time, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A scaling law was evaluated with a quantity of the wrong kind.
    #[error("unit mismatch: law expects {expected}, got {got}")]
    UnitMismatch {
        expected: QuantityKind,
        got: QuantityKind,
    },

    /// Catalog fitting failed (too few points, degenerate abscissae, ...).
    #[error("fit error: {0}")]
    Fit(String),

    /// The reduction-ratio solver did not converge within its iteration cap.
    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    Solver { residual: f64, iterations: u32 },

    /// A design cannot meet its requirements.
    #[error("infeasible design: {0}")]
    Infeasible(String),

    /// An operating point exceeds the capability of a sized drivetrain.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A configuration file or `--set` path could not be interpreted.
    #[error("config error (line {line}): {message}")]
    Config { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(line: usize, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }
}
