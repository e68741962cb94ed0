use thiserror::Error;

use crate::structure::StructureError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected order {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("k must be at least 2, got {0}")]
    InvalidK(u64),

    #[error("n must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("power exponent must be at least 1")]
    ZeroExponent,

    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("CycleLengthInvalid: cycle length {length} does not divide k-1 = {k_minus_one}")]
    CycleLengthInvalid { length: usize, k_minus_one: u64 },

    #[error("ProductNotZeroOne: entry ({row},{col}) of XP^TY equals {value}")]
    ProductNotZeroOne { row: usize, col: usize, value: u64 },

    #[error("InvalidParams: {0}")]
    InvalidParams(String),

    #[error("ValidationFailed: {0}")]
    ValidationFailed(String),

    #[error("order {n} exceeds the enumeration limit {limit}{hint}")]
    OrderTooLarge {
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
