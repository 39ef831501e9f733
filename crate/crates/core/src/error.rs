use thiserror::Error;

/// Errors raised by the algebra engine, the braid layer and the parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomials live in different variable orders")]
    OrderMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in order")]
    DuplicateVariable(String),
    #[error("`{0}` is reserved")]
    ReservedVariable(String),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("trailing term needs a binomial, got {0} terms")]
    NotBinomial(usize),
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid braid spec: {0}")]
    InvalidSpec(String),
    #[error("closure level {level} out of range for {strands} strands")]
    ClosureOutOfRange { level: usize, strands: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
