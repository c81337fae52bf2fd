use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not Hermitian positive-definite")]
    NotPositiveDefinite,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown block index {0}")]
    UnknownBlock(usize),
    #[error("family label collision: {0}")]
    LabelCollision(String),
    #[error("invalid family label `{0}` (1-3 ASCII letters)")]
    InvalidLabel(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("missing image for generator {0}")]
    MissingGenerator(String),
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("incompatible assignment: {0}")]
    IncompatibleAssignment(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid filtration spec: {0}")]
    InvalidSpec(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("audit failure: {0}")]
    Audit(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
