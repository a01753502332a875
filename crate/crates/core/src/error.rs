use thiserror::Error;

/// Errors raised by the solvers, the module layer, the instance harness and the file format.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix has a zero dimension")]
    EmptyMatrix,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("dimension mismatch in {context}: {detail}")]
    DimensionMismatch { context: &'static str, detail: String },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("module contexts differ: {0}")]
    ContextMismatch(String),

    #[error("R(C) is not contained in R(A): relative residual {residual:e}")]
    RangeNotContained { residual: f64 },

    #[error("hypothesis violated: {hypothesis} (residual {residual:e})")]
    HypothesisViolated { hypothesis: String, residual: f64 },

    #[error("equation is not solvable: {condition} fails (residual {residual:e})")]
    NotSolvable { condition: String, residual: f64 },

    #[error("supplied pair is not a solution: relative residual {residual:e}")]
    NotASolution { residual: f64 },

    #[error("R(A) and R(B) intersect trivially")]
    EmptyIntersection,

    #[error("R(A) ∩ R(B) is not contained in R(C): relative residual {residual:e}")]
    IntersectionNotInRangeC { residual: f64 },

    #[error("infeasible instance spec: {0}")]
    InfeasibleSpec(String),

    #[error("unknown equation tag `{0}`")]
    UnknownEquationTag(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dims(context: &'static str, detail: impl Into<String>) -> Error {
    Error::DimensionMismatch { context, detail: detail.into() }
}
