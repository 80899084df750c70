use thiserror::Error;

/// Errors raised by the numerical kernels and the finite-field harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported order {order} (supported: {supported})")]
    UnsupportedOrder { order: i64, supported: &'static str },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("result out of representable range: {0}")]
    Range(String),

    #[error("accuracy target {target:e} not reached (estimate {estimate}, error {error:e})")]
    Accuracy { estimate: f64, error: f64, target: f64 },

    #[error("invalid rank g = {0} (expected 1, 2 or 3)")]
    InvalidRank(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid prime {0}: need an odd prime below 2^20")]
    InvalidPrime(u64),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("Weil data rejected for p = {p}: N1 = {n1}, N2 = {n2} (c1 = {c1}, c2 = {c2})")]
    CountingBug { p: u64, n1: i64, n2: i64, c1: i64, c2: i64 },

    #[error("exhaustive scan at p = {p} would visit {models} models (limit p <= {max_p})")]
    ExhaustiveTooLarge { p: u64, models: u128, max_p: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
