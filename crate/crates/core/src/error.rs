use thiserror::Error;

/// Errors produced by construction, queries and the index file codec.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty text")]
    EmptyText,

    #[error("alphabet too large: {0} distinct symbols")]
    AlphabetTooLarge(usize),

    #[error("invalid symbol {symbol} at position {position}")]
    InvalidSymbol { position: usize, symbol: u32 },

    #[error("{what} out of range: {value} not in [{lo}..{hi}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("invalid range {start}:{end}")]
    InvalidRange { start: usize, end: usize },

    #[error("threshold unreachable: {threshold} exceeds {available}")]
    ThresholdUnreachable { threshold: u64, available: u64 },

    #[error("node is not a leaf")]
    NotALeaf,

    #[error("unsupported in {mode} mode: {op}")]
    Unsupported { op: &'static str, mode: &'static str },

    #[error("collapse required: node {0} has out-degree 1")]
    CollapseRequired(usize),

    #[error("graph is not a single-source single-sink DAG: {0}")]
    MalformedDag(String),

    #[error("corrupt index: {0}")]
    Corrupt(String),

    #[error("unsupported index format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::OutOfRange { what, value, lo, hi })
    } else {
        Ok(())
    }
}
