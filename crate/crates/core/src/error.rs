use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u32),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("monomials have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("computation budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("poset of size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("not a poset ideal: {0}")]
    NotPosetIdeal(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
