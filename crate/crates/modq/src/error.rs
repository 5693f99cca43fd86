use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("no irreducible modulus found for GF({p}^{k})")]
    ModulusSearchFailure { p: u64, k: usize },

    #[error("GF({q}) contains no primitive {n}-th root of unity")]
    NoSuchRoot { n: u64, q: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("S-pair budget of {budget} exhausted after processing {processed} pairs")]
    BudgetExceeded { budget: u64, processed: u64 },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("unsupported regime: characteristic {char_p}, p = {p}")]
    UnsupportedRegime { char_p: u64, p: u64 },

    #[error("element does not lie in the given subalgebra: {0}")]
    NotInSubalgebra(String),

    #[error("greedy factorization obstruction: {0}")]
    ObstructionFound(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("point counts do not interpolate to an integer polynomial in q: {0}")]
    NotPolynomialCount(String),

    #[error("enumeration cap exceeded: {needed} points requested, cap is {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
