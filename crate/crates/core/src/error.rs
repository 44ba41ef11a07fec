use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("invalid Drinfeld module: {0}")]
    InvalidModule(String),
    #[error("invalid encoding: {0}")]
    Encoding(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("division by pi^{k} is not exact")]
    NotDivisible { k: u32 },
    #[error("operands have mismatched lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("precision exhausted while {0}")]
    PrecisionExhausted(String),
    #[error("additive polynomial is not of the form pi*tau^0 + higher terms")]
    NotInSDagger,
    #[error("intertwiner equation has no solution: {0}")]
    StrictnessViolation(String),
    #[error("linear coefficient is nonzero")]
    NonzeroLinearTerm,
    #[error("vector is not in the ghost image")]
    NotInGhostImage,
    #[error("precision too low to certify {0}")]
    PrecisionTooLowToCertify(String),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("integrality failure: {0}")]
    IntegralityFailure(String),
    #[error("case not covered by the closed form: {0}")]
    CaseNotCovered(String),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
