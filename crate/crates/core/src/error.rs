use thiserror::Error;

/// Errors raised by the algebraic and combinatorial operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("repeated index {0} in blade")]
    RepeatedIndex(usize),

    #[error("dimension {0} is not supported (must be 1..=32)")]
    UnsupportedDimension(usize),

    #[error("expected grade {expected}, found {found}")]
    WrongGrade { expected: String, found: String },

    #[error("operation requires dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("volume coefficient must be nonzero")]
    ZeroVolume,

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("cochain is not closed: |d c| = {residual:e}")]
    NotClosed { residual: f64 },

    #[error("cochain length {found} does not match {expected} simplices")]
    CochainLength { expected: usize, found: usize },

    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A parse failure, with the 1-based line number when the input is a file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        Self { line: None, message: message.into() }
    }

    pub fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line: Some(line), message: message.into() }
    }

    pub(crate) fn with_line(mut self, line: usize) -> Self {
        self.line.get_or_insert(line);
        self
    }
}

pub type Result<T> = std::result::Result<T, Error>;
