use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("curve must contain at least one point")]
    EmptyCurve,
    #[error("non-finite coordinate: {0}")]
    NonFinite(String),
    #[error("distance threshold must be non-negative, got {0}")]
    NegativeDelta(String),
    #[error("disk radius must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("matrix side {0} is not of the form 2^k + 1")]
    BadSide(usize),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("position ({x}, {y}) outside the {n}x{n} grid")]
    OutOfBounds { x: usize, y: usize, n: usize },
    #[error("free terminal ({x}, {y}) is not a terminal of the structure")]
    NotATerminal { x: usize, y: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("children do not match block {0}")]
    MismatchedChildren(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("chunk size must be at least 1")]
    ZeroChunk,
    #[error("invalid gadget input: {0}")]
    Gadget(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no critical value admits a translation")]
    NoFeasibleValue,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
