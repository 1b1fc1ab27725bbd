use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The approximated objectives divide by the residual self-interference
    /// and are undefined when it vanishes.
    #[error("relay {relay}: residual self-interference is zero, use the ideal-cancellation solver")]
    ZetaHatZero { relay: usize },

    #[error("no feasible power allocation: {0}")]
    Infeasible(String),

    #[error("empty search interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("point outside the open domain: {0}")]
    Domain(String),

    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("{}: {message}", config_location(*.line, .field))]
    ConfigParse {
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

fn config_location(line: Option<usize>, field: &Option<String>) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!("config line {l}, field `{f}`"),
        (Some(l), None) => format!("config line {l}"),
        (None, Some(f)) => format!("config field `{f}`"),
        (None, None) => "config".to_string(),
    }
}

impl Error {
    pub(crate) fn config(line: Option<usize>, field: Option<&str>, message: impl Into<String>) -> Self {
        Error::ConfigParse {
            line,
            field: field.map(str::to_string),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
