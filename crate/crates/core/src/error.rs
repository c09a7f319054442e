use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("non-integer shift or exponent difference: {0}")]
    NonInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("factor vanishes identically: {0}")]
    VanishingFactor(String),
    #[error("malformed rational tail: {0}")]
    MalformedTail(String),
    #[error("ragged structure set: {0}")]
    RaggedStructureSet(String),
    #[error("empty structure set")]
    EmptyStructureSet,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("all coefficients are zero")]
    AllZero,
    #[error("recurrence collapsed to 0")]
    Collapse,
    #[error("value is not well-defined at this point: {0}")]
    Undefined(String),
    #[error("too many variables: {0} (limit {1})")]
    TooManyVariables(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
