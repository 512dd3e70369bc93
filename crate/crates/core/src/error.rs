use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("character is not symmetric under w -> -w (weight {0})")]
    AsymmetricCharacter(i64),

    #[error("character has a non-representable remainder at weight {0}")]
    InvalidCharacter(i64),

    #[error("plethysm is only defined on genuine representations (S{label} has multiplicity {mult})")]
    NegativeMultiplicity { label: u32, mult: i64 },

    #[error("internal arithmetic produced a non-integral coefficient: {0}")]
    NonIntegral(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("degree {0} out of range 0..=8")]
    Degree(usize),

    #[error("casimir analysis failed: {0}")]
    Casimir(String),

    #[error("generators do not satisfy [e1,e2] = 2e3 cyclically")]
    NotSo3,

    #[error("invariant forms could not be separated by support: {0}")]
    Support(String),

    #[error("pencil scan found no stabilizer jump")]
    NoJump,

    #[error("unknown tag '{0}'")]
    UnknownTag(String),

    #[error("weight bundle is not self-conjugate")]
    NotSelfConjugate,

    #[error("weights are inconsistent with the tangent bundle: {0}")]
    InconsistentWeights(String),

    #[error("ideal decomposition failed: {0}")]
    Ideals(String),
}

pub type Result<T> = std::result::Result<T, Error>;
