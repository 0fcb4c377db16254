use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient moments: need {needed}, have {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("sequence vanishes identically")]
    AllZero,

    #[error("block degree {degree} exceeds degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("P-fraction has no terms")]
    EmptyPFraction,

    #[error("not enough P-fraction terms: need {needed}, have {available}")]
    NotEnoughTerms { needed: usize, available: usize },

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("coupling b_{0} is not known")]
    MissingCoupling(usize),

    #[error("polynomial is not monic of positive degree")]
    NotMonic,

    #[error("vector support reaches the truncation boundary")]
    SupportTooWide,

    #[error("bad block range [{lo}, {hi}] for {blocks} blocks")]
    BadRange { lo: usize, hi: usize, blocks: usize },

    #[error("lambda is a pole")]
    PoleAtLambda,

    #[error("truncation too shallow: need {needed} blocks/indices, have {available}")]
    TruncationTooShallow { needed: usize, available: usize },

    #[error("bad basis index (block {block}, offset {offset})")]
    BadIndex { block: usize, offset: usize },

    #[error("period {period} does not fit {terms} terms")]
    PeriodMismatch { period: usize, terms: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
