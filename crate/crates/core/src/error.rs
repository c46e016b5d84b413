use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{m} exceeds the cap of {cap} elements")]
    FieldTooLarge { p: u32, m: u32, cap: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("element index {index} does not belong to a field of size {size}")]
    ForeignElement { index: u32, size: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("norm root of zero is undefined")]
    ZeroNormRoot,
    #[error("evaluation points are not distinct")]
    DuplicatePoint,
    #[error("column multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("invalid GRS spec: {0}")]
    InvalidSpec(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("inner code is not contained in the outer code")]
    NotContained,
    #[error("no codeword of the outer code lies outside the inner code")]
    EmptyDifference,
    #[error("the zero code has no nonzero codeword")]
    ZeroCode,
    #[error("code is not Hermitian self-orthogonal")]
    NotSelfOrthogonal,
    #[error("witness is not a codeword of the puncture code")]
    NotInPunctureCode,
    #[error("witness support {support} is smaller than 2k = {min}")]
    WitnessTooSmall { support: usize, min: usize },
    #[error("length/dimension bound violated: {0}")]
    Forbidden(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("malformed record: {0}")]
    Malformed(String),
}
