use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("letter {letter} repeated inside block {block}")]
    RepeatedInBlock { block: usize, letter: u32 },

    #[error("empty input where a sequence is required")]
    EmptyInput,

    #[error("letters of a pair must differ (got {0} twice)")]
    SameLetter(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("restriction length {len} exceeds the exhaustive-search cap {cap}")]
    RestrictionTooLong { len: usize, cap: usize },

    #[error("{what}: {count} subsets exceed the enumeration cap {cap}")]
    SubsetCap { what: &'static str, count: u128, cap: u128 },

    #[error("edges {first} and {second} intersect in {size} vertices, more than {limit}")]
    IntersectionTooLarge {
        first: usize,
        second: usize,
        size: usize,
        limit: usize,
    },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("{query} outside the desk-scale caps ({caps}); pass an override to run it anyway (estimated nodes <= {estimate:.3e})")]
    CapExceeded { query: String, caps: String, estimate: f64 },

    #[error("malformed matrix: {0}")]
    Matrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
