use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus override is not irreducible over F_p")]
    NotIrreducible,
    #[error("modulus override has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("field of order {size} exceeds the enumeration budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("subfield index {0} does not divide 6 or is not allowed here")]
    BadSubfieldIndex(u32),
    #[error("the two points coincide")]
    EqualPoints,
    #[error("curve has {got} points, expected {expected}")]
    CountMismatch { expected: u64, got: u64 },
    #[error("line {line} meets the curve in {size} points")]
    CharacterViolation { line: String, size: usize },
    #[error("slope is degenerate (m^(q+1) + m^q a^q + m a + b^q + b = 0)")]
    DegenerateSlope,
    #[error("unknown polynomial identifier {0:?}")]
    UnknownPolyId(String),
    #[error("A(a) = 0 but this operation needs A != 0")]
    AIsZero,
    #[error("A(a) != 0 but this operation needs A = 0")]
    AIsNotZero,
    #[error("claim failed: {0}")]
    ClaimFailed(String),
    #[error("base point lies in AG(2, q^2)")]
    PointInSubplane,
    #[error("slope is not in F_(q^2)")]
    SlopeNotInFq2,
    #[error("slope equals -(b^(q^2) - b)/(a^(q^2) - a)")]
    ForbiddenSlope,
    #[error("interpolation system is underdetermined ({rank} of {unknowns} unknowns)")]
    UnderdeterminedSystem { rank: usize, unknowns: usize },
    #[error("no input satisfies the preconditions at this q")]
    PreconditionUnsatisfiable,
    #[error("invalid element encoding {0:?}")]
    InvalidElement(String),
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("cache file error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
