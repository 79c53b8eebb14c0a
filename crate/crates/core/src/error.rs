use thiserror::Error;

/// Errors raised by the monomial engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live on different block structures.
    #[error("structure mismatch: {0}")]
    Structure(String),
    /// Parameters violate a construction precondition.
    #[error("invalid parameters: {0}")]
    Parameter(String),
    /// Parameters fall outside the range where a closed form applies.
    #[error("out of range: {0}")]
    Range(String),
    /// An exhaustive enumeration would exceed a configured cap.
    #[error("size guard tripped: {0}")]
    SizeGuard(String),
    /// The input lies outside the operation's domain (e.g. an unsortable set).
    #[error("domain error: {0}")]
    Domain(String),
    /// Exponent or coefficient arithmetic overflowed.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structure(_) => "structure",
            Error::Parameter(_) => "parameter",
            Error::Range(_) => "range",
            Error::SizeGuard(_) => "guard",
            Error::Domain(_) => "domain",
            Error::Overflow(_) => "overflow",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
