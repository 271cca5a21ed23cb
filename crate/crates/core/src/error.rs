use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("alphabet mismatch: q = {0} vs q = {1}")]
    AlphabetMismatch(u8, u8),
    #[error("symbol {value} outside alphabet [1..{q}]")]
    InvalidSymbol { value: u8, q: u8 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large: {0}")]
    BudgetExceeded(String),
    #[error("expected a {0}-mode simplex point")]
    ModeMismatch(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basic feasible solution contract violated: {0}")]
    BfsContract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the command-line tool maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 3,
            _ => 2,
        }
    }
}
