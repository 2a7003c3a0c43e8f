use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ideal not m-primary (or exceeds truncation cap {cap})")]
    NotMPrimary { cap: usize },

    #[error("relations generate the unit ideal")]
    UnitIdeal,

    #[error("subspace is not multiplicatively closed: basis elements {left} and {right} multiply outside it")]
    NotClosed { left: usize, right: usize },

    #[error("multiplication table is not a commutative associative local algebra: {0}")]
    InvalidTable(String),

    #[error("inverse system: {0}")]
    InverseSystem(String),

    #[error("algebra is not Gorenstein (socle dimension {socle_dim})")]
    NotGorenstein { socle_dim: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("criterion fails: {0}")]
    CriterionFails(String),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("out of theorem's range: {0}")]
    OutOfRange(String),

    #[error("zero ideal")]
    ZeroIdeal,

    #[error("series: {0}")]
    Series(String),

    #[error("no closed-form prediction: {0}")]
    NoPrediction(String),

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
