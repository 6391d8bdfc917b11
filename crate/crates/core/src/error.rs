use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("nerve level {level} would hold {cells} cells, over the cap of {cap}")]
    TooManyCells { level: usize, cells: BigInt, cap: u64 },

    #[error("cochain has {got} entries but level {level} has {want} cells")]
    LevelMismatch { level: usize, got: usize, want: usize },

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
