use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("invalid field parameter d = {0}: must be squarefree and not 0 or 1")]
    InvalidField(String),
    #[error("field mismatch: d = {0} vs d = {1}")]
    FieldMismatch(i64, i64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("value out of supported range: {0}")]
    OutOfRange(String),
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
