use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("PoleAtOne")]
    PoleAtOne,
    #[error("PoleError order {order}")]
    Pole { order: u64 },
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("ParseError at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("MonotonicityError at line {line}")]
    Monotonicity { line: usize },
    #[error("NotPrimitive")]
    NotPrimitive,
    #[error("MissingKappa0 for {0}; pass --kappa0")]
    MissingKappa0(String),
    #[error("InvalidKappa0: {0}")]
    InvalidKappa0(String),
    #[error("Unsupported: {0}")]
    Unsupported(String),
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-friendly name, used by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PoleAtOne => "PoleAtOne",
            Error::Pole { .. } => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::Parse { .. } => "ParseError",
            Error::Monotonicity { .. } => "MonotonicityError",
            Error::NotPrimitive => "NotPrimitive",
            Error::MissingKappa0(_) => "MissingKappa0",
            Error::InvalidKappa0(_) => "InvalidKappa0",
            Error::Unsupported(_) => "Unsupported",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
