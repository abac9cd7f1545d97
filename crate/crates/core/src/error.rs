use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("length {length} exceeds the supported maximum {max}")]
    Capacity { length: usize, max: usize },

    #[error("rank {rank} out of range for length {length} (Bell number {bell})")]
    RankOutOfRange { length: usize, rank: u64, bell: u64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole: specialising {symbol} = {value} makes a denominator vanish")]
    Pole { symbol: String, value: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("closure did not stabilise within {passes} passes (dimensions {dims:?})")]
    PassLimit { passes: usize, dims: Vec<usize> },

    #[error("no planar contraction order: {0}")]
    Planner(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedPartition(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
