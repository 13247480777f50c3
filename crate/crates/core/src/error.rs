use thiserror::Error;

/// Errors raised by the Tate algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("the variable list is empty")]
    NoVariables,
    #[error("precision cap must be positive, got {0}")]
    BadPrecision(i64),
    #[error("expected {expected} log-radii, got {got}")]
    RadiiLength { expected: usize, got: usize },
    #[error("invalid log-radius: {0}")]
    BadRadius(String),
    #[error("coefficients over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("coefficients over different ramification indices")]
    RamificationMismatch,
    #[error("adding coefficients whose valuations lie in different classes modulo the ramification index")]
    ClassMismatch,
    #[error("series belong to different algebra contexts")]
    ContextMismatch,
    #[error("coefficient is not a unit")]
    NotAUnit,
    #[error("division by a coefficient indistinguishable from zero")]
    DivisionByZero,
    #[error("quotient would leave the integral ring (valuation {numerator} < {denominator})")]
    NonIntegralQuotient { numerator: i64, denominator: i64 },
    #[error("series is zero at the working precision")]
    ZeroAtPrecision,
    #[error("series is not invertible in this ring at this precision")]
    NotInvertible,
    #[error("operation requires zero log-radii")]
    NonZeroRadii,
    #[error("operation requires integer log-radii")]
    NonIntegerRadii,
    #[error("operation is only supported for a single variable")]
    UnsupportedDimension,
    #[error("empty generator list")]
    NoGenerators,
    #[error("all generators are zero at the working precision")]
    AllZero,
    #[error("input not normalized: {0}")]
    NotNormalized(String),
    #[error("minimal GB element not in K{{X;r}}")]
    DescentFailure,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
