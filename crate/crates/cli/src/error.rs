use std::fmt;

use simcorr_core::Error as CoreError;

/// Process exit codes.
pub const EXIT_GENERAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SELECTOR: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("column selection: {0}")]
    Selector(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn io(context: impl fmt::Display, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.to_string(),
            source,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn selector(message: impl Into<String>) -> Self {
        CliError::Selector(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_GENERAL,
            CliError::Malformed { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Selector(_) => EXIT_SELECTOR,
            CliError::Core(e) => match e {
                CoreError::NonFinite { .. }
                | CoreError::TooFewSamples { .. }
                | CoreError::TooManySamples { .. }
                | CoreError::Shape { .. }
                | CoreError::SampleCountMismatch { .. }
                | CoreError::Config(_)
                | CoreError::Grid(_)
                | CoreError::Toy(_) => EXIT_INPUT,
                _ => EXIT_GENERAL,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
