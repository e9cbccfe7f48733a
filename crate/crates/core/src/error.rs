use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A composite cofactor survived trial division and the Pollard rho budget.
    /// Anything that depends on this factorization must be treated as unknown.
    #[error("factoring budget exhausted on composite cofactor {cofactor}")]
    FactoringExceededBudget { cofactor: BigInt },

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("{value} is not a square unit in Q_{prime}")]
    NotALocalSquare { value: String, prime: BigInt },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid surface data: {0}")]
    InvalidSurface(String),

    #[error("quartic is not separable: {0}")]
    InseparableInput(String),

    #[error("degenerate fiber over {0}")]
    DegenerateFiber(String),

    #[error("lemma check failed: {0}")]
    LemmaViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
