use thiserror::Error;

use crate::gridworld::GridPos;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("position {pos} is outside the {width}x{height} grid")]
    OutOfBounds {
        pos: GridPos,
        width: usize,
        height: usize,
    },

    #[error("invalid world: {0}")]
    InvalidWorld(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("non-finite value produced: {0}")]
    NonFinite(&'static str),

    #[error("insufficient data: need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("correlation undefined for a constant sequence")]
    UndefinedCorrelation,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("degenerate t-test: paired differences have zero variance")]
    DegenerateTest,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
