use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Cap,
    Verification,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("{what} cap exceeded: requested {requested}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("subgroup is not normal: conjugation by element {conjugator} moves it")]
    NotNormal { conjugator: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    /// A proved statement failed on concrete data; always an implementation defect.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("construction defect: {0}")]
    ConstructionDefect(String),

    #[error("residual homology after cell attachment: {0}")]
    Residual(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Input(_) | Error::InvalidGroup(_) | Error::NotPrime(_) | Error::Hypothesis(_) => {
                ErrorKind::Input
            }
            Error::CapExceeded { .. } => ErrorKind::Cap,
            Error::NotNormal { .. }
            | Error::InvariantViolation(_)
            | Error::ConstructionDefect(_)
            | Error::Residual(_) => ErrorKind::Verification,
        }
    }
}
