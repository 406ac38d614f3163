use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty set of probability vectors")]
    EmptySet,

    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("non-finite entry at index {index}")]
    NonFiniteEntry { index: usize },

    #[error("entries sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("negative increment {value} at index {index}")]
    NegativeIncrement { index: usize, value: f64 },

    #[error("partial sums are not nondecreasing at index {index}")]
    NotMonotone { index: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (entrywise defect {defect})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("operator norm {norm} exceeds 1")]
    NormExceedsOne { norm: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("measurement elements do not sum to identity (entrywise defect {defect})")]
    IncompleteMeasurement { defect: f64 },

    #[error("operator {index} does not reproduce its element: defect {defect}")]
    OperatorElementMismatch { index: usize, defect: f64 },

    #[error("Bloch vector has norm {norm} > 1")]
    BlochNormExceedsOne { norm: f64 },

    #[error("outcome probability {probability} too small to condition on")]
    VanishingOutcome { probability: f64 },

    #[error("measurement element {index} is not rank-1 (second eigenvalue {second_eigenvalue})")]
    NotRankOne {
        index: usize,
        second_eigenvalue: f64,
    },

    #[error("component index {j} outside 1..={dim}")]
    ComponentIndex { j: usize, dim: usize },

    #[error("search did not converge on any restart (best value {best})")]
    SearchFailure { best: f64 },

    #[error("invalid search configuration: {0}")]
    BadConfig(String),

    #[error("quadrature order {0} too small, need at least 16")]
    QuadratureOrder(usize),

    #[error("phase-space quantities must be positive (got {0})")]
    NonPositivePhaseSpace(f64),

    #[error("eigensolver failed to converge")]
    EigenFailure,

    #[error("function failed the concavity spot-check (defect {defect})")]
    NotConcave { defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
