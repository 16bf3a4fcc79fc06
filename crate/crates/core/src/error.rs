use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bracket is not antisymmetric at basis pair ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("product is not left-symmetric (defect {defect:e})")]
    NotLeftSymmetric { defect: f64 },

    #[error("algebra is not commutative and associative")]
    NotCommutativeAssociative,

    #[error("compatibility failure: {0}")]
    Incompatible(String),

    #[error("point {point:?} is outside the domain of the function")]
    Domain { point: Vec<f64> },

    #[error("finite-difference step underflow ({0:e})")]
    StepUnderflow(f64),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}
