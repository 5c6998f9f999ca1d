use bqz::ParseError;
use thiserror::Error;

use crate::report::Status;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{field}: {source}")]
    Literal {
        field: String,
        #[source]
        source: ParseError,
    },

    #[error("invalid spec: {0}")]
    Spec(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Domain(#[from] bqz::Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Literal { .. } => "ParseError",
            CliError::Spec(_) => "SpecError",
            CliError::Io { .. } => "IoError",
            CliError::Domain(e) => e.name(),
        }
    }

    /// Malformed input maps to a parse failure, everything the math layer
    /// rejects on numerical grounds to a domain failure.
    pub fn status(&self) -> Status {
        match self {
            CliError::Domain(bqz::Error::InvalidParams(_) | bqz::Error::InvalidRecurrence(_)) => {
                Status::ParseError
            }
            CliError::Domain(_) => Status::DomainError,
            _ => Status::ParseError,
        }
    }
}
