use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid singularity (p, q) = ({p}, {q}): {reason}")]
    InvalidSingularity { p: i64, q: i64, reason: &'static str },

    #[error("invalid continued-fraction input {num}/{den}: {reason}")]
    InvalidFraction { num: i64, den: i64, reason: &'static str },

    #[error("sequence is not a Hirzebruch-Jung expansion: {0}")]
    InvalidSequence(String),

    #[error("denominator factor (N, nu) = (0, 0) is not expandable")]
    NonExpandable,

    #[error("coefficient of T^{index} has a negative exponent of L: {detail}")]
    NegativeExponent { index: usize, detail: String },

    #[error("nonvanishing negative-order term in the L -> 1 limit: {0}")]
    LimitAssertion(String),

    #[error("search space too large: about {estimate:e} assignments (limit {limit:e})")]
    TooLarge { estimate: f64, limit: f64 },

    #[error("unsupported field size q = {0} (prime powers up to 13 only)")]
    BadFieldSize(u64),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("order vector is not in the interior of the cone")]
    NotInterior,

    #[error("insufficient truncation data for order {0}")]
    Truncation(usize),

    #[error("inverse problem: {0}")]
    Recovery(String),
}
