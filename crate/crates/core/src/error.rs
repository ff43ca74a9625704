use thiserror::Error;

/// Errors raised by matrix, state and criterion operations.
///
/// Variants that stem from a measured violation carry the measured value so
/// callers can print a diagnostic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ShapeMismatch: {len} entries for a {rows}x{cols} matrix")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("EmptyMatrix: matrices need at least one row and one column")]
    EmptyMatrix,

    #[error("NonFinite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("NotHermitian deviation {deviation:.1e}")]
    NotHermitian { deviation: f64 },

    #[error("InvalidDims: local dimensions {d_a}x{d_b}, both must be at least 2")]
    InvalidDims { d_a: usize, d_b: usize },

    #[error("DimensionMismatch: matrix side {side} does not equal {d_a}*{d_b}")]
    DimensionMismatch { side: usize, d_a: usize, d_b: usize },

    #[error("TraceNotOne deviation {deviation:.1e}")]
    TraceNotOne { deviation: f64 },

    #[error("NotPSD min eigenvalue {min_eigenvalue:.6e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("IndexOutOfRange: block index ({i}, {j}) with {bound} blocks per side")]
    IndexOutOfRange { i: usize, j: usize, bound: usize },

    #[error("NotXClass deviation {deviation:.1e}")]
    NotXClass { deviation: f64 },

    #[error("UnsupportedDims: criterion needs {expected}, state is {d_a}x{d_b}")]
    UnsupportedDims {
        expected: &'static str,
        d_a: usize,
        d_b: usize,
    },

    #[error("NotSquareDims: local dimensions {d_a} and {d_b} differ")]
    NotSquareDims { d_a: usize, d_b: usize },

    #[error("TraceConstraintViolated: diagonal weights sum to {sum}")]
    TraceConstraintViolated { sum: f64 },

    #[error("ParamOutOfRange: {name} = {value} ({allowed})")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("UnknownFamily: {0}")]
    UnknownFamily(String),

    #[error("BadParam: {0}")]
    BadParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
