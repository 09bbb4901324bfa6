use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("expected rank {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },

    #[error("element {0} is not a minimal coset representative in ^I W")]
    NotInParabolicQuotient(String),

    #[error("character {0} is not I-dominant (need a_1 >= a_2 >= ... >= a_n)")]
    NotIDominant(String),

    #[error("parity violation for {0}: the character lattice requires Σ a_i ≡ b (mod 2)")]
    Parity(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("matrix is singular mod {0}")]
    Singular(u32),

    #[error("similitude scalar must be nonzero mod {0}")]
    ZeroScalar(u32),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("monomial space of size {monomials} exceeds budget {budget}")]
    Budget { monomials: u64, budget: u64 },

    #[error("size guard violated: {0}")]
    Guard(String),

    #[error("determinants of the tuple differ")]
    DeterminantMismatch,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element list is not a group: {0}")]
    NotAGroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
