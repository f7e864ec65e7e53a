use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in the supported range")]
    InvalidPrime(u32),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("the zero ideal has no initial degree")]
    ZeroIdeal,
    #[error("unit ideals are not supported")]
    UnitIdeal,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("lines are proportional and have no unique intersection")]
    ProportionalLines,
    #[error("rejection sampling for {what} gave up after {attempts} attempts; retry with another seed")]
    RejectionExhausted { what: String, attempts: usize },
    #[error("budget exhausted: {0}")]
    BudgetExceeded(String),
    #[error("Hilbert function did not stabilize up to degree {0}; scheme is not zero-dimensional")]
    NotZeroDimensional(u32),
    #[error("no nonzero form of degree <= {0} satisfies the vanishing conditions")]
    NoSolution(u32),
    #[error("falsification event: {0}")]
    Falsification(String),
    #[error("malformed configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
