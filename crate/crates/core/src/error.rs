//! Shared error type for certified computations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A comparison stayed undecided after refining both sides to the
    /// precision cap. The two values are either equal or closer than the
    /// cap can separate.
    #[error("comparison undecidable at precision cap {cap} bits")]
    UndecidableAtCap { cap: u32 },

    /// An interval endpoint could not be rounded to a definite integer at
    /// the precision cap, so the prime search range itself is unknown.
    #[error("range boundary undecidable at precision cap {cap} bits")]
    UndecidableBoundary { cap: u32 },

    /// A certified prime search range contained no prime.
    #[error("no prime in certified range [{lo}, {hi}]")]
    NoPrimeInRange { lo: String, hi: String },

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("polynomial must be squarefree")]
    NotSquarefree,

    #[error("zero polynomial has no roots to bound")]
    ZeroPolynomial,

    /// Conjugate enumeration would exceed the configured cap.
    #[error("conjugate count {count} exceeds cap {cap}")]
    CapExceeded { count: u64, cap: u64 },

    /// Numeric certification could not pin a discrete object (integer
    /// coefficient, separated root) at the precision cap.
    #[error("certification failed at precision cap {cap} bits: {what}")]
    PrecisionExhausted { cap: u32, what: String },

    /// Tower generation ran out of admissible choices.
    #[error("tower generation stuck at level {level}: {reason}")]
    GenerationStuck { level: usize, reason: String },

    /// A level threshold exceeds the configured magnitude limit.
    #[error("level threshold exceeds 2^{max_bits}; refusing to evaluate")]
    ThresholdTooLarge { max_bits: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
