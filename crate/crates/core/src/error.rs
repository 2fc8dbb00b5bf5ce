use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: {left} x-variables vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("not divisible: nonzero remainder with leading monomial {0}")]
    NotDivisible(String),

    #[error("not shift-invariant: t{m} survives in the difference rewrite")]
    NotShiftInvariant { m: usize },

    #[error("polynomial involves {0}, expected a polynomial in t1..t{1} only")]
    OutsideCoefficientRing(String, usize),

    #[error("polynomial is not skew-symmetric under the swap of x{0} and x{1}")]
    NotSkewSymmetric(usize, usize),

    #[error("polynomial is not symmetric under the swap of x{0} and x{1}")]
    NotSymmetric(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid strictly decreasing sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid Grassmannian G({n},{m}): need 1 <= n <= m")]
    InvalidContext { n: usize, m: usize },

    #[error("partition {partition} does not fit in the {rows}x{cols} box")]
    OutOfBox {
        partition: String,
        rows: usize,
        cols: usize,
    },

    #[error("size guard: binomial({m},{n}) = {classes} exceeds {limit} classes")]
    SizeGuard {
        n: usize,
        m: usize,
        classes: u64,
        limit: u64,
    },

    #[error("enumeration guard: size {size} exceeds {limit}")]
    EnumerationGuard { size: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
