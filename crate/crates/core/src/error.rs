use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree {0} outside 1..=16")]
    DegreeOutOfRange(u32),
    #[error("field order {p}^{m} exceeds 2^16")]
    OrderTooLarge { p: u32, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not a monic irreducible polynomial of the stated degree")]
    ReducibleModulus,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {0} is not a member of the field")]
    InvalidElement(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no basis {{beta, beta^q}} found")]
    NoBasisFound,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("vectors are not linearly independent")]
    NotIndependent,
    #[error("{what}: size {size} exceeds exhaustive limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid logical operators: {0}")]
    InvalidLogicals(String),
    #[error("Pauli is not in the normalizer")]
    NotInNormalizer,
    #[error("duplicate evaluation point at position {0}")]
    DuplicateEvaluationPoint(usize),
    #[error("zero column multiplier at position {0}")]
    ZeroMultiplier(usize),
    #[error("bad code dimension: {0}")]
    BadDimension(String),
    #[error("weight {w} outside [{d}, {n}]")]
    WeightOutOfRange { w: usize, d: usize, n: usize },
    #[error("generators do not describe a group of the expected size")]
    NotAGroup,
    #[error("first code is not contained in the second")]
    NotASubcode,
    #[error("normalizer code minus stabilizer code is empty")]
    EmptyDifference,
    #[error("inner code must have k = n")]
    WrongInnerRate,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("domain error: {0}")]
    DomainError(String),
}
