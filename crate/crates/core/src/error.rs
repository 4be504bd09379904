use thiserror::Error;

/// How a principal-generator search ended without a hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorFailure {
    /// The short-vector enumeration ran to its radius without finding an element of the right norm.
    BoundExhausted,
    /// The ideal norm is not a norm from the order at all (no element of that absolute norm exists
    /// in the ideal lattice up to the searched radius, and the lattice minimum already exceeds it).
    Insoluble,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside 1..=6")]
    DegreeOutOfRange(usize),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(u64),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("work budget exceeded: cost {cost} > budget {budget}")]
    BudgetExceeded { cost: u128, budget: u128 },
    #[error("trace data rejected: {0}")]
    InvalidTraces(String),
    #[error("Weil bound violated: {0}")]
    WeilBound(String),
    #[error("p = {0} is ramified")]
    Ramified(u64),
    #[error("field {field}: corrupted data, check failed: {check}")]
    CorruptData { field: u32, check: String },
    #[error("data format: {0}")]
    DataFormat(String),
    #[error("no principal generator found ({0:?})")]
    GeneratorNotFound(GeneratorFailure),
    #[error("precision: {0}")]
    Precision(String),
    #[error("local factor at p = {0} has non-integral coefficients")]
    NonIntegral(u64),
    #[error("element is not coprime to the modulus")]
    NotCoprime,
    #[error("class data missing for a non-principal ideal")]
    ClassDataMissing,
    #[error("polynomial division left a remainder at p = {0}")]
    DivisionRemainder(u64),
    #[error("relation check failed: {0}")]
    RelationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
