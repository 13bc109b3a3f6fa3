//! Command-line front end for the `genli` library.

mod commands;
mod config;
mod output;

pub use commands::{
    cmd_cache, cmd_compare, cmd_compute, cmd_mellin_check, cmd_positivity, cmd_truncation, cmd_zeros_verify,
    load_or_build_table, CacheAction, ComparisonRow, PositivityRow, RouteValue, CONSISTENT,
};
pub use config::{parse_complex, OutputFormat, RouteKind, RunConfig};
pub use output::{comparison_csv, fmt_f64, positivity_csv, records_csv, records_json, CSV_HEADER};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("route failure: {0}")]
    RouteFailure(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt data: {0}")]
    Corrupt(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::RouteFailure(_) => 2,
            CliError::MissingInput(_) => 3,
            CliError::Config(_) => 4,
            CliError::Io(_) => 5,
            CliError::Corrupt(_) => 6,
        }
    }
}

impl From<genli::Error> for CliError {
    fn from(e: genli::Error) -> Self {
        match e {
            genli::Error::Io(io) => CliError::Io(io),
            genli::Error::Corrupt(m) => CliError::Corrupt(m),
            e @ (genli::Error::Parse { .. } | genli::Error::Order { .. }) => CliError::Corrupt(e.to_string()),
            e => CliError::RouteFailure(e.to_string()),
        }
    }
}

/// Text written to the report plus the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub exit_code: i32,
}
