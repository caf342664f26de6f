//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by field construction, code construction, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} out of supported range 1..=16")]
    EllOutOfRange(u32),

    #[error("polynomial 0b{poly:b} is not a primitive polynomial of degree {ell}")]
    NotPrimitive { poly: u32, ell: u32 },

    #[error("element label {label} out of range for GF(2^{ell})")]
    LabelOutOfRange { label: u32, ell: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("row index {row} out of range for a {size}x{size} dyadic permutation matrix")]
    RowOutOfRange { row: u32, size: u32 },

    #[error("mismatched extension degrees: {left} vs {right}")]
    EllMismatch { left: u32, right: u32 },

    #[error("empty matrix is not allowed here")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("multiplier with label {label} is zero (row {row})")]
    ZeroMultiplier { label: u32, row: usize },

    #[error("duplicate multiplier label {label} in {location}")]
    DuplicateMultiplier { label: u32, location: &'static str },

    #[error("row count {w} out of range (need 1..={max} distinct nonzero multipliers)")]
    WidthOutOfRange { w: usize, max: usize },

    #[error("default multiplier sets need ell >= 2, got {0}")]
    DefaultSetsTooSmall(u32),

    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),

    #[error("GF(4) label {0} outside 0..=3")]
    BadGf4Label(u8),

    #[error("alist parse error: {0}")]
    AlistParse(String),

    #[error("inconsistent code directory: {0}")]
    InconsistentCodeDir(String),

    #[error("invalid configuration: {0}")]
    BadConfig(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
