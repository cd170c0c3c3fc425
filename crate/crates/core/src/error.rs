use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A documented precondition of an operation does not hold. `hypothesis`
    /// names the violated assumption so reports can point at it.
    #[error("precondition violated ({hypothesis}): {detail}")]
    Precondition {
        hypothesis: &'static str,
        detail: String,
    },

    #[error("inconsistent preference data under {axioms}: denied pair with difference {difference} is implied")]
    Inconsistent { axioms: String, difference: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn precondition(hypothesis: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            hypothesis,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
