use thiserror::Error;

/// Errors produced by drawing construction, parsing and the algorithms on top.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("edge {0} appears in two crossings")]
    EdgeCrossedTwice(usize),

    #[error("dart {0} is dangling (missing or duplicated in the rotation system)")]
    DanglingDart(usize),

    #[error("rotation at crossing {0} does not alternate between its two edges")]
    NonAlternatingCrossing(usize),

    #[error("loop edge {0} participates in a crossing")]
    LoopCrossed(usize),

    #[error("planarization is not connected")]
    Disconnected,

    #[error("rotation system is not planar (Euler check failed: V={v}, E={e}, F={f})")]
    NotPlanar { v: usize, e: usize, f: usize },

    #[error("drawing is not triangulated (cell {0} has degree {1})")]
    NotTriangulated(usize, i64),

    #[error("cell {cell} of degree {degree} has no insertable non-consecutive vertex pair with an existing edge; input was not saturated")]
    NotSaturated { cell: usize, degree: i64 },

    #[error("alpha must be a rational in [0, 3], got {0}")]
    AlphaOutOfRange(String),

    #[error("graph too large for brute force: n = {n} exceeds limit {limit}")]
    BruteForceTooLarge { n: usize, limit: usize },

    #[error("invalid surgery: {0}")]
    InvalidSurgery(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
