use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("singular {size}x{size} matrix (rank {rank})")]
    Singular { size: usize, rank: usize },

    #[error("matrix is not square or right-hand side has the wrong length ({rows}x{cols}, rhs {rhs})")]
    Shape { rows: usize, cols: usize, rhs: usize },

    #[error("space mismatch: expected `{expected}`, found `{found}`")]
    SpaceMismatch { expected: String, found: String },

    #[error("space `{0}` is not a product")]
    NotAProduct(String),

    #[error("constant term must be 1, found {0}")]
    NonUnitConstant(String),

    #[error("constant term must be 0, found {0}")]
    NonZeroConstant(String),

    #[error("class is not of bidegree (1,1): {0}")]
    Bidegree(String),

    #[error("basis index {index} out of range for space `{space}`")]
    BasisIndex { space: String, index: usize },

    #[error("malformed space: {0}")]
    InvalidSpace(String),

    #[error("space file line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("kernel is not an equivalence: {0}")]
    NotAnEquivalence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
