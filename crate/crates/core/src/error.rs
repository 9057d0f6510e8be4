use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    InvalidPrime(u64),
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("exponent overflow (per-variable exponents must stay below 2^16)")]
    ExponentOverflow,
    #[error("operands live in different rings")]
    MixedRings,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("Groebner basis order does not match the requested order")]
    OrderMismatch,
    #[error("computation budget exceeded ({used} reduction steps, limit {limit})")]
    BudgetExceeded { used: u64, limit: u64 },
    #[error("{0} is not a power of the characteristic")]
    NotAPowerOfP(u64),
    #[error("quotient is not zero-dimensional")]
    NotZeroDimensional,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("ideal is not contained in the maximal ideal of the origin")]
    IdealNotInMaximal,
    #[error("exponent t must be a nonnegative rational")]
    NegativeT,
    #[error("test element c lies in the ideal")]
    CInIdeal,
    #[error("invalid block order: eliminated prefix {k} with {nvars} variables")]
    InvalidBlock { k: usize, nvars: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("input error at line {line}: {message}")]
    Input { line: usize, message: String },
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
