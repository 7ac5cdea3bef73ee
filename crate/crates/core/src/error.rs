use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least {min}, got {got}")]
    InvalidRank { got: usize, min: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid root {0}")]
    InvalidRoot(String),

    #[error("window is not a permutation of 1..{len}: {reason}")]
    NotPermutation { len: usize, reason: String },

    #[error("mirror condition fails at positions {i} and {j}: w({i}) + w({j}) = {sum}, expected {expected}")]
    MirrorViolation {
        i: usize,
        j: usize,
        sum: usize,
        expected: usize,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("p must be at least 2, got {0}")]
    InvalidPrime(i64),

    #[error("admissible pair ({i},{j}) has class Other and no root")]
    OtherClass { i: usize, j: usize },

    #[error("element {0} is not a minimal coset representative")]
    NotMinimal(String),

    #[error("element {0} does not admit a separating system")]
    NotSeparating(String),

    #[error("root {root} is not a lower neighbor of {elem}")]
    NotNeighbor { root: String, elem: String },

    #[error("singular linear system")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("certificate failed its own check: {0}")]
    BadCertificate(String),

    #[error("generator description is not simplicial: {0}")]
    NotSimplicial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
