use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched rings: {0}")]
    RingMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("specialization pole: denominator `{0}` vanishes")]
    SpecializationPole(String),

    #[error("negative power of non-monomial `{0}`")]
    NonUnitPower(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("entry ({row}; {col}): {message}")]
    Entry { row: String, col: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
