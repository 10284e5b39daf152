use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("basis index {index} out of range for dimension {d}")]
    BasisIndex { index: usize, d: usize },
    #[error("duplicate member {0} in set")]
    Duplicate(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("member {0} is not unitary (deviation {1:.3e})")]
    NotUnitary(usize, f64),
    #[error("members {0} and {1} are not trace-orthogonal (|Tr| = {2:.3e})")]
    NotOrthogonal(usize, usize, f64),
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("invalid measurement: {0}")]
    InvalidPovm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
