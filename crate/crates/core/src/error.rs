use std::fmt;

use crate::shapes::Cell;

/// A text-parsing failure, annotated with the character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        Self {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at position {} in {:?}",
            self.message, self.position, self.input
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("parts {0:?} are not strictly decreasing positive integers")]
    NotStrict(Vec<u32>),

    #[error("inner partition {inner:?} is not contained in outer partition {outer:?}")]
    NotContained { outer: Vec<u32>, inner: Vec<u32> },

    #[error("tableau has {found} entries in row {row}, shape requires {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("tableau has {found} rows, shape requires {expected}")]
    RowCount { expected: usize, found: usize },

    #[error("cell {0} is not part of the shape")]
    CellOutsideShape(Cell),

    #[error("both neighbours of the dot at {0} are missing; it already sits at an outside corner")]
    DotAtOutsideCorner(Cell),

    #[error("cell {0} is not an inside corner")]
    NotInsideCorner(Cell),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("shapes differ: {0} vs {1}")]
    ShapeMismatch(String, String),

    #[error("exact evaluation needs non-negative integer exponents, found {0}")]
    NonIntegerExponent(String),

    #[error("symmetrization over {size}! permutations exceeds the guard {guard}")]
    GuardExceeded { size: usize, guard: usize },

    #[error("polynomial is not in the span of Schur P-functions: leading monomial {0:?} is not a strict partition")]
    NotInSpan(Vec<u32>),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
