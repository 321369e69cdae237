use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0:?} is not a reduced word of the longest element")]
    NotLongestWord(Vec<usize>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("crystal element outside the embedded image: {0}")]
    CorruptElement(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("face is empty")]
    EmptyFace,
    #[error("polytope has a non-integral vertex")]
    NonIntegral,
    #[error("operator not applicable: {0}")]
    Inapplicable(String),
    #[error("pairing unresolved: {0}")]
    Unresolved(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("budget exceeded after {0} cells")]
    BudgetExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
