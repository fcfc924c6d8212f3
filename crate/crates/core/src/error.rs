use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("weights and coefficients differ in length: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("elements live over different weight sequences")]
    WeightMismatch,
    #[error("invalid weight sequence: {0}")]
    InvalidWeights(String),
    #[error("parameters are not pairwise distinct: {0}")]
    DuplicateParameters(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid path on arm {arm}: {from}..{to}")]
    InvalidPath { arm: usize, from: usize, to: usize },
    #[error("representations belong to different algebras")]
    AlgebraMismatch,
    #[error("matrix is singular: {0}")]
    Singular(String),
    #[error("canonical relations violated: {0}")]
    RelationsViolated(String),
    #[error("invalid module specification: {0}")]
    InvalidSpec(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
