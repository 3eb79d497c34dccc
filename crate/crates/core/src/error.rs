use thiserror::Error;

/// Errors reported by the solvers and the I/O layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet of size {sigma}")]
    SymbolOutOfRange { symbol: u32, sigma: usize },

    #[error("run {index} has zero length")]
    EmptyRun { index: usize },

    #[error("runs {index} and {} carry the same symbol {symbol}", index + 1)]
    AdjacentEqualRuns { index: usize, symbol: u32 },

    #[error("total length overflows 64 bits")]
    LengthOverflow,

    #[error("window length {len} exceeds string length {n}")]
    WindowOutOfRange { len: usize, n: usize },

    #[error("run indices ({i}, {j}) out of range for {m} runs")]
    RunIndexOutOfRange { i: usize, j: usize, m: usize },

    #[error("word budget exceeded; use oracle ({reason})")]
    WordBudgetExceeded { reason: String },

    #[error("lookup table needs {needed} entries, cap is {cap}")]
    TableTooLarge { needed: u64, cap: u64 },

    #[error("alphabet of size {sigma} not supported: {reason}")]
    UnsupportedAlphabet { sigma: usize, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rectangle has {dims} non-singleton dimensions, at most 2 allowed")]
    TooManyDimensions { dims: usize },

    #[error("rectangle interval {lo}..={hi} is empty")]
    InvertedInterval { lo: u64, hi: u64 },

    #[error("brute-force guard exceeded: {what} would enumerate {count} points (limit {limit})")]
    GuardExceeded {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
