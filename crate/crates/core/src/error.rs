//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid base '{0}'")]
    BadBase(char),
    #[error("subsequence bounds {i}..{j} invalid for length {len} (need 1 <= i < j <= len)")]
    SubsequenceRange { i: usize, j: usize, len: usize },
    #[error("unrecognized symbol '{0}'")]
    BadSymbol(String),
    #[error("unparseable side label '{0}'")]
    BadSideLabel(String),
    #[error("side arity mismatch: {left} vs {right}")]
    SideArityMismatch { left: usize, right: usize },
    #[error("word design infeasible: length {length}, min distance {distance}, {requested} symbols requested, only {found} words found")]
    WordDesignInfeasible { length: usize, distance: usize, requested: usize, found: usize },
    #[error("word table has no entry for symbol {0}")]
    MissingWord(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error("side length n must be at least 4 (got {0})")]
    SideTooSmall(i64),
    #[error("pattern alphabet must have at least 2 symbols (got {0})")]
    AlphabetTooSmall(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("assembly state is empty (no seed)")]
    EmptyState,
    #[error("placement at ({x},{y}) would violate the adjacency invariant")]
    InconsistentPlacement { x: i64, y: i64 },
    #[error("assembly stalled in step {step} ({missing} mandatory sites unfilled, first {x},{y})")]
    Stalled { step: usize, missing: usize, x: i64, y: i64 },
    #[error("step {step} did not reach quiescence within the iteration budget")]
    NoQuiescence { step: usize },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("bad magic or version on line 1: expected '{expected}', got '{got}'")]
    BadHeader { expected: String, got: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    pub fn parse(line: usize, msg: impl Into<String>) -> FormatError {
        FormatError::Parse { line, msg: msg.into() }
    }
}
