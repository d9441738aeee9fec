use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument `{0}` must be positive")]
    NotPositive(&'static str),
    #[error("delta = {delta} is below the feasibility guard 1/16: primes up to e^(1/delta) ~ {prime_limit} would be needed")]
    DeltaTooSmall { delta: String, prime_limit: String },
    #[error("cycle length {0} must be even and at least 4")]
    BadCycleLength(usize),
    #[error("probability {0} must lie strictly between 0 and 1")]
    BadProbability(f64),
    #[error("{what} needs {needed} units of work, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },
    #[error("two progressions share difference {0}")]
    DuplicateDifference(String),
    #[error("input must be strictly increasing (position {0})")]
    NotStrictlyIncreasing(usize),
    #[error("difference {0} is not an integer")]
    NonIntegerDifference(String),
    #[error("progression lengths differ ({0} vs {1})")]
    LengthMismatch(u64, u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
