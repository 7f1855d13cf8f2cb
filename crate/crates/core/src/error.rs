use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZeroPoly,
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("malformed range: lo = {lo} > hi = {hi}")]
    MalformedRange { lo: i64, hi: i64 },
    #[error("repeated interpolation abscissa {0}")]
    RepeatedAbscissa(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis not independent")]
    BasisNotIndependent,
    #[error("R does not exist: basis does not span an invariant subspace")]
    NoExactSolution,
    #[error("not gridded: {0}")]
    NotGridded(String),
    #[error("matrix not invertible over Q(z)")]
    SingularMatrix,
    #[error("bad base point: A is singular or undefined at {0}")]
    BadBasePoint(String),
    #[error("pole at evaluation point {0}")]
    Pole(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("basis override does not span the invariant subspace")]
    BasisOverrideMismatch,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown example {0:?}")]
    UnknownExample(String),
}
