use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite coordinate in complex point")]
    NonFinite,
    #[error("pole at {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("accuracy {target:e} not reached within {max_terms} terms")]
    AccuracyNotReached { target: f64, max_terms: usize },
    #[error("branch path passes within {margin} of excluded point {re} + {im}i")]
    TooCloseToZero { re: f64, im: f64, margin: f64 },
    #[error("phase jump {jump} exceeds the cap between waypoints {index} and {next}", next = index + 1)]
    StepCap { index: usize, jump: f64 },
    #[error("series diverges for Re s = {0} <= 1")]
    Divergent(f64),
    #[error("prime table up to {limit} cannot reach tolerance {tolerance:e}")]
    InsufficientTable { limit: u64, tolerance: f64 },
    #[error("sieve limit {limit} exceeds memory budget of {budget_bytes} bytes")]
    Capacity { limit: u64, budget_bytes: usize },
    #[error("ambiguous winding: accumulated {turns} turns")]
    AmbiguousWinding { turns: f64 },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("insufficient sampling: {0}")]
    InsufficientSampling(String),
    #[error("zero #{0} has not been recorded")]
    MissingZero(usize),
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
