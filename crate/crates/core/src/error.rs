use thiserror::Error;

use crate::meta::Format;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("format mismatch: expected {expected}, found {found}")]
    FormatMismatch { expected: Format, found: Format },

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid weight {weight:?} for format {format}")]
    InvalidWeight { weight: Vec<i64>, format: Format },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not a semistandard tableau: {0}")]
    NotSemistandard(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is singular")]
    Singular,

    #[error("homogenization target degree {target} is below occurring degree {found}")]
    HomogenizeDegree { target: u32, found: u32 },

    #[error("metapolynomial is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("characters of {a:?} and {b:?} are not separated by any generator")]
    Nonseparable { a: Vec<i64>, b: Vec<i64> },

    #[error("operator is not in PBW normal form")]
    NotNormalized,

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("space of dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
