use thiserror::Error;

/// Errors produced anywhere in the modeling pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown stage id '{0}'")]
    UnknownStage(String),

    #[error("unknown parameter id '{0}'")]
    UnknownParameter(String),

    #[error("unknown scenario '{name}'; valid names: {valid}")]
    UnknownScenario { name: String, valid: String },

    #[error("no price configured for material '{0}'")]
    MissingPrice(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit code for the CLI contract: 3 for validation/parse
    /// failures, 4 for numeric and I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_)
            | Error::UnknownStage(_)
            | Error::UnknownParameter(_)
            | Error::UnknownScenario { .. }
            | Error::MissingPrice(_)
            | Error::Parse { .. } => 3,
            Error::Numeric(_) | Error::Io(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
