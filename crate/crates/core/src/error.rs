use std::io;

use thiserror::Error;

/// Errors produced by matrix construction, the oracle, and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("buffer of {len} entries is not a square 2^n x 2^n matrix")]
    BadBufferLength { len: usize },

    #[error("{qubits} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { qubits: usize, max: usize },

    #[error("invalid Pauli label character {found:?} at position {position}")]
    InvalidLabel { position: usize, found: char },

    #[error("empty Pauli label")]
    EmptyLabel,

    #[error("tolerance must be a finite non-negative number, got {0}")]
    InvalidTolerance(f64),

    #[error("bad magic bytes {0:?}, expected \"PDMX\"")]
    BadMagic([u8; 4]),

    #[error("unsupported matrix file version {0}")]
    UnsupportedVersion(u16),

    #[error("truncated payload: expected {expected} bytes, got {actual}")]
    Truncated { expected: usize, actual: usize },

    #[error("trailing data after matrix payload")]
    TrailingData,

    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}, column {column}: cannot parse complex literal {literal:?}")]
    ComplexLiteral {
        line: usize,
        column: usize,
        literal: String,
    },

    #[error("line {line}: duplicate term (r={r}, s={s})")]
    DuplicateTerm { line: usize, r: usize, s: usize },

    #[error("line {line}: label {label:?} does not match r={r}, s={s}")]
    LabelMismatch {
        line: usize,
        label: String,
        r: usize,
        s: usize,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
