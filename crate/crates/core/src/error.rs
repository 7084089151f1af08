use crate::matrix::MatrixKind;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite value at sample {row}, coordinate {col}")]
    NonFinite { row: usize, col: usize },
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("{got} samples exceeds the configured limit of {limit}")]
    TooManySamples { got: usize, limit: usize },
    #[error("expected {expected} values, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("sample count mismatch: {left} vs {right}")]
    SampleCountMismatch { left: usize, right: usize },
    #[error("distance exponents differ: {left} vs {right}")]
    AlphaMismatch { left: f64, right: f64 },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("expected a {expected:?} matrix, got {got:?}")]
    WrongKind {
        expected: MatrixKind,
        got: MatrixKind,
    },
    #[error("invalid kernel configuration: {0}")]
    Config(&'static str),
    #[error("invalid scale grid: {0}")]
    Grid(&'static str),
    #[error("invalid toy specification: {0}")]
    Toy(&'static str),
}
