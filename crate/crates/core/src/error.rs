use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group validation failed: {0}")]
    InvalidGroup(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("exponent escapes the subcategory: {0}")]
    ExponentEscape(String),
    #[error("norm not available: {0}")]
    NormUnavailable(String),
    #[error("invalid subcategory: {0}")]
    InvalidSubcategory(String),
    #[error("invalid indexing system: {0}")]
    InvalidIndexing(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
