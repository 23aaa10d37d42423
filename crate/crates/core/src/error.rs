use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("not a numerical semigroup: {0}")]
    NotNumericalSemigroup(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("element is not in the ring: {0}")]
    NotInRing(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("invalid reduction: {0}")]
    InvalidReduction(String),
    #[error("invalid Apery basis: {0}")]
    InvalidBasis(String),
    #[error("insufficient precision: need t-adic precision {needed}, have {available}")]
    Precision { needed: u32, available: u32 },
    #[error("precision cap exceeded: needed {needed}, cap {cap}")]
    PrecisionCap { needed: u32, cap: u32 },
    #[error("filtration index {index} outside the supported window (max {max})")]
    OutOfWindow { index: u32, max: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("value {0} is not in the value semigroup")]
    NotInSemigroup(u32),
    #[error("invalid input: {0}")]
    Input(String),
    /// An internal invariant failed; always a bug, never an input property.
    #[error("internal defect: {0}")]
    Defect(String),
}

impl Error {
    pub fn is_defect(&self) -> bool {
        matches!(self, Error::Defect(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
