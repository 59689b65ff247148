use thiserror::Error;

use crate::lattice::MultiIndex;

/// A resonance witness: the index and integer (or coordinate) at which the
/// small denominator vanishes exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceWitness {
    pub k: MultiIndex,
    /// `p` for additive resonance `kz = p`, the coordinate `j` (1-based) for
    /// multiplicative resonance `λ^k = λ_j`.
    pub tag: i64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precision exhausted at {bits} bits: {what}")]
    PrecisionExhausted { bits: u32, what: String },

    #[error("resonance at k = {} ({})", .0.k, .0.tag)]
    Resonant(ResonanceWitness),

    #[error("multi-index is zero")]
    ZeroIndex,

    #[error("point has a zero coordinate (index {0}); the coordinate-axes set is excluded")]
    AxesSet(usize),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
