use thiserror::Error;

/// Errors raised by the solvers, generators and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("position {pos} out of range for length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(u32),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid symbol table: {0}")]
    InvalidSymbolTable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
