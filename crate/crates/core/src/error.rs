//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entry {value} at ({row},{col}) is not in {{+1,-1,0}}")]
    BadEntry { row: usize, col: usize, value: i32 },

    #[error("matrix is not square: {rows} rows, {cols} cols")]
    NotSquare { rows: usize, cols: usize },

    #[error("order {order} exceeds the library limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("matrix of order {order} is not Hadamard")]
    NotHadamard { order: usize },

    #[error("{context}: expected order {expected}, got {got}")]
    OrderMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("operation requires order >= {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("input lists must have equal length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrices are not mutually quasi-unbiased: pair ({i},{j}) fails")]
    NotMutuallyQuasiUnbiased { i: usize, j: usize },

    #[error("half split requires even dimensions, got {dim}")]
    OddSplit { dim: usize },

    #[error("code is empty")]
    EmptyCode,

    #[error("code has fewer than two words")]
    TooFewWords,

    #[error("duplicate word at index {index}")]
    DuplicateWord { index: usize },

    #[error("word {index} has length {got}, expected {expected}")]
    WordLengthMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },

    #[error("matrix is not normalized (first row and column must be all ones)")]
    NotNormalized,

    #[error("no antipodal block decomposition: words {w1} and {w2} cannot be separated")]
    NoBlockDecomposition { w1: usize, w2: usize },

    #[error("distance set must contain n and be closed under i -> n-i; offender {offender}")]
    BadDistanceSet { offender: usize },

    #[error("code degree {degree} exceeds the supported class count {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("unsupported fixture parameter m={m} (supported: {supported})")]
    UnsupportedFixture { m: usize, supported: &'static str },

    #[error("parameters (l,a)=({l},{a}) are not feasible for order {n}")]
    InfeasibleParameters { n: usize, l: u64, a: u64 },

    #[error("enumeration space too large: order {order} exceeds limit {limit}")]
    SearchTooLarge { order: usize, limit: usize },

    #[error("codeword enumeration exceeds the cap of 2^{cap} words")]
    CodeTooLarge { cap: u32 },

    #[error("value does not fit in the result type")]
    Overflow,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
