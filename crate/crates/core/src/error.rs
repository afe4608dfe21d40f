use thiserror::Error;

use crate::group::GroupId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(GroupId, GroupId),
    #[error("cannot enumerate all of the infinite group {0}")]
    InfiniteEnumeration(GroupId),
    #[error("{0} is infinite")]
    InfiniteGroup(GroupId),
    #[error("group {0} is too large for the bar construction")]
    GroupTooLarge(GroupId),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("not a cycle, residual {residual}")]
    NotACycle { residual: String },
    #[error("basis change in degree {degree} is not invertible: {detail}")]
    NotInvertible { degree: usize, detail: String },
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown artifact {0}")]
    UnknownArtifact(String),
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("invalid data: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
