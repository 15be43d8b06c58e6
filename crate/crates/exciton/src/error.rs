use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate condition: {0}")]
    Degenerate(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bracket error: {0}")]
    Bracket(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 1 for bad input, 2 for internal numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) | Error::Resource(_) | Error::Io(_) => 1,
            Error::Degenerate(_) | Error::Convergence(_) | Error::Bracket(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
