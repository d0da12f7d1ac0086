use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inputs must be traceless")]
    NotTraceless,
    #[error("exact field overflow: {0}")]
    ExactFieldOverflow(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator set is not closed: residual {residual:e} for pair ({a}, {b})")]
    NotClosed { residual: f64, a: usize, b: usize },
    #[error("subset is not a subalgebra: residual {residual:e} for pair ({a}, {b})")]
    NotSubalgebra { residual: f64, a: usize, b: usize },
    #[error("period mismatch for generator {index}: {detail}")]
    PeriodMismatch { index: usize, detail: String },
    #[error("structure constants differ: {diff:e} at ({a}, {b}, {c})")]
    StructureMismatch { diff: f64, a: usize, b: usize, c: usize },
    #[error("cartan elements do not commute: residual {0:e}")]
    NotCommuting(f64),
    #[error("adjoint action is not diagonalizable: residual {0:e}")]
    NotDiagonalizable(f64),
    #[error("wrong root system type: {0}")]
    WrongType(String),
    #[error("coordinates outside the chart range: {0}")]
    OutOfRange(String),
    #[error("matrix is not special unitary: residual {0:e}")]
    NotUnitary(f64),
    #[error("value is not representable: {0}")]
    NotRepresentable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
