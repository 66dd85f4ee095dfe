use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("tag count mismatch: {0} vs {1}")]
    TagMismatch(usize, usize),
    #[error("tag count {0} exceeds the cap of {max}", max = crate::pimenov::MAX_TAGS)]
    TooManyTags(usize),
    #[error("element is not invertible: its scalar part is zero")]
    NotInvertible,
    #[error("block count {r} out of range for a subset of size {p}")]
    BlockCount { r: usize, p: usize },
    #[error("kernel `{name}` has no derivative of order {order} at {at}")]
    KernelDerivative { name: String, order: usize, at: String },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("signature contains an imaginary slot; quantum constructions take only the values 1 and a nilpotent unit")]
    ImaginarySlot,
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("matrix size cap exceeded: {0}")]
    SizeCap(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pole encountered: 1 - w*a*xi = 0")]
    PoleEncountered,
    #[error("invalid geometry parameter: {0}")]
    Geometry(String),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("word degree {0} exceeds the cap {1}")]
    DegreeCap(usize, usize),
    #[error("inconsistent ideal: the unit lies in the ideal")]
    InconsistentIdeal,
    #[error("division by {0} is not defined for this element")]
    NotDivisible(String),
    #[error("config error at line {line}, field `{field}`: {msg}")]
    Config { line: usize, field: String, msg: String },
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
