use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("{0}")]
    BadParameters(String),

    /// The trigonometric sum did not land within the residual bound of an integer.
    #[error("precision exhausted at {bits} bits (residual bound not met)")]
    PrecisionExhausted { bits: usize },

    #[error("D + (-1)^eps * delta = {0} is odd")]
    ParityViolation(String),

    #[error("no polynomial formula for rank {g}, case {case}")]
    NoSuchFormula { g: usize, case: String },

    #[error("non-integral result: {0}")]
    NonIntegralResult(String),

    #[error("need at least {needed} interpolation points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("highest weight undefined: omega_{index} needed at rank {g}")]
    WeightUndefined { g: usize, index: i64 },

    #[error("empty module")]
    EmptyModule,

    #[error("no unique dominance-maximal weight")]
    NoUniqueMaximum,
}

impl Error {
    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadParameters(msg.into())
    }
}
