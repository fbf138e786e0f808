use thiserror::Error;

/// Errors raised by group, module and checker operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration exceeded the cap of {0}")]
    CapExceeded(usize),
    #[error("group order {0} is not a power of the declared prime")]
    NotPGroup(u64),
    #[error("generators do not share one realization")]
    MixedRealization,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("operation requires an odd prime")]
    OddPrimeRequired,
    #[error("p and q are not coprime")]
    NotCoprime,
    #[error("scan budget of {0} exceeded")]
    ScanBudgetExceeded(usize),
    #[error("group was not built as a wreath product")]
    NotWreathGroup,
    #[error("subgroup does not lie in the base of the wreath product")]
    NotInBase,
    #[error("element is central and has no deepest commutator")]
    NoDeepest,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("matrices do not define a homomorphism (element {element}, generator {generator})")]
    NotHomomorphism { element: usize, generator: usize },
    #[error("generator matrix {0} is not invertible")]
    NotInvertible(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("wrong realization: {0}")]
    WrongRealization(String),
    #[error("unsupported field: {0}")]
    Field(String),
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("input error: {0}")]
    Input(String),
    /// A computed instance contradicts a proven statement; always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
