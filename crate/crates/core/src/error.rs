use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("cell count {got} does not match shape {rows}x{cols}")]
    CellCount {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("shapes differ: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid interval {start}..{end}")]
    InvalidInterval { start: usize, end: usize },

    #[error("bad input: {0}")]
    BadInput(String),

    #[error(
        "infeasible: residual rank at ({row},{col}) became negative; not a ranked essential set"
    )]
    InfeasibleNegativeRank { row: usize, col: usize },

    #[error("infeasible: {0}")]
    InfeasibleInconsistent(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("size {cells} cells exceeds cap {cap}")]
    SizeExceeded { cells: usize, cap: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid interchange: {0}")]
    InvalidMove(String),

    #[error("invalid convex-class spec: {0}")]
    SpecInvalid(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: row has length {got}, expected {expected}")]
    RaggedRows {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: unexpected character {ch:?}")]
    NonBinaryChar { line: usize, ch: char },
}

impl Error {
    /// True for the failure kinds that mean "no matrix satisfies the request",
    /// as opposed to malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::InfeasibleNegativeRank { .. }
                | Error::InfeasibleInconsistent(_)
                | Error::Infeasible(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
