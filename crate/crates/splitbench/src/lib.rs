//! Configuration-driven benchmark harness for the resolvent-split solvers.
//!
//! A plain-text config file describes a splitting problem (see [`spec`] for
//! the format), [`runner::run`] executes it with full per-iteration traces,
//! [`csv`] persists the traces, and [`rate`] fits empirical decay exponents
//! to an error column.

pub mod csv;
pub mod rate;
pub mod runner;
pub mod spec;

pub use crate::csv::{emit_csv, parse_csv, Record};
pub use rate::{fit_rate, RateFit};
pub use runner::{probe, run, ExperimentResult};
pub use spec::{parse_config, parse_config_str, Method, ProblemKind, ProblemSpec};

use thiserror::Error;

/// Everything that can go wrong between a config file and a finished run.
#[derive(Debug, Error)]
pub enum BenchError {
    /// Malformed config text; points at the offending line.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    /// A syntactically fine config with an invalid or missing field.
    #[error("config field `{field}`: {msg}")]
    Field { field: String, msg: String },
    /// Rate fitting could not produce a slope from the given window.
    #[error("rate fit: {0}")]
    Fit(String),
    /// CSV contents that do not match the trace schema.
    #[error("{path}:{line}: {msg}")]
    Csv {
        path: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Solver(#[from] resolvent_split::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl BenchError {
    pub(crate) fn field(field: impl Into<String>, msg: impl Into<String>) -> Self {
        BenchError::Field {
            field: field.into(),
            msg: msg.into(),
        }
    }
}
