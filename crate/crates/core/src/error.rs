use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in 2..=251")]
    NotPrime(u32),
    #[error("entry {value} out of range for GF({p})")]
    EntryOutOfRange { value: u32, p: u8 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("elements are not mutually reflexive inverses")]
    NotMutuallyReflexive,
    #[error("idempotents are not Murray-von Neumann equivalent")]
    NotIso,
    #[error("ideals are not perspective")]
    NotPerspective,
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("interval violation: require lo <= a <= hi")]
    IntervalViolation,
    #[error("enumeration of {needed} cases exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("reduction trace has not stabilized")]
    NotStabilized,
    #[error("reduction trace too short: need step {0}")]
    TraceTooShort(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
