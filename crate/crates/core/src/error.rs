use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("n = {0} is outside the supported range 1..={max}", max = crate::perm::MAX_N)]
    UnsupportedSize(usize),

    #[error("not a permutation of 1..{n}: {word:?}")]
    NotAPermutation { n: usize, word: Vec<usize> },

    #[error("cannot parse one-line notation: offending token {token:?}")]
    Parse { token: String },

    #[error("expression is not reduced")]
    NotReduced,

    #[error("expression evaluates to {found}, expected {expected}")]
    ExpressionMismatch { expected: String, found: String },

    #[error("right-hull criterion requires a permutation avoiding 4231, 35142, 42513, 351624; got {0}")]
    HullRequiresAvoiding(String),

    #[error("{u} is not below {w} in Bruhat order")]
    NotBelow { u: String, w: String },

    #[error("{0} is not smooth (contains 3412 or 4231)")]
    NotSmooth(String),

    #[error("invalid reduction pair for {0}")]
    InvalidPair(String),

    #[error("chain is not lambda-decreasing")]
    NotDecreasing,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),

    #[error("n = {n} exceeds the ceiling {ceiling} for check {check}")]
    CeilingExceeded {
        check: String,
        n: usize,
        ceiling: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
