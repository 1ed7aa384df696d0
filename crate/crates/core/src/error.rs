use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: expected comma-separated positive integers")]
    InvalidPartition(String),

    #[error("invalid permutation images {0:?}: not a bijection of 1..=n")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid coefficient {0:?}: expected an integer or p/q")]
    InvalidCoefficient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("brute-force limit exceeded: {what} needs n = {n}, limit is n <= {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("k = {k} out of range for n = {n}")]
    KOutOfRange { n: usize, k: usize },

    #[error("no closed form for k = {0} (only k = 2 and k = 3 are known)")]
    NoClosedForm(usize),

    #[error("method {method} does not apply to {lambda}")]
    MethodNotApplicable { method: String, lambda: String },

    #[error("{context}: coefficient of degree {degree} is {value}, expected an integer")]
    NonIntegral {
        context: String,
        degree: usize,
        value: String,
    },

    #[error("parity violation: coefficient of degree {degree} is {value}, expected 0 when every exponent has the parity of {parity}")]
    ParityViolation { parity: usize, degree: usize, value: String },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("class function violation: {0}")]
    ClassFunctionViolation(String),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
}
