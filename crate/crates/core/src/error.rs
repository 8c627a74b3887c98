use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol size {size} is too small (need at least {min})")]
    SizeTooSmall { size: i64, min: i64 },

    #[error("κ entry {0} is negative")]
    NegativeEntry(Rational),

    #[error("malformed charge: {0}")]
    MalformedCharge(String),

    #[error("β-set cutoff failed to certify the tail (bug)")]
    InternalCutoff,

    #[error("the parameter r (equivalently h) must be nonzero")]
    ZeroR,

    #[error("operation only defined at level 2, got level {0}")]
    WrongLevel(usize),

    #[error("parameter lies on a wall")]
    OnWall,

    #[error("e = {e} does not divide l = {l}")]
    BadDivisor { l: usize, e: usize },

    #[error("block partition is not compatible with the C_e action: {0}")]
    NotCeStable(String),

    #[error("value function is not constant on class {class}")]
    ConstancyViolation { class: usize },

    #[error("relation is not compatible with the group action")]
    NonEquivariant,

    #[error("relation is a preorder, not a partial order")]
    PreorderNotOrder,

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SizeTooSmall { .. } => "SizeTooSmall",
            Error::NegativeEntry(_) => "NegativeEntry",
            Error::MalformedCharge(_) => "MalformedCharge",
            Error::InternalCutoff => "InternalCutoff",
            Error::ZeroR => "ZeroR",
            Error::WrongLevel(_) => "WrongLevel",
            Error::OnWall => "OnWall",
            Error::BadDivisor { .. } => "BadDivisor",
            Error::NotCeStable(_) => "NotCeStable",
            Error::ConstancyViolation { .. } => "ConstancyViolation",
            Error::NonEquivariant => "NonEquivariant",
            Error::PreorderNotOrder => "PreorderNotOrder",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::LevelMismatch { .. } => "LevelMismatch",
            Error::Invalid(_) => "Invalid",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
