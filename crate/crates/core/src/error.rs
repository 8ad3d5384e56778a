use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the supported bound 2^16")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("no irreducible polynomial of degree {k} found over GF({p})")]
    NoIrreducible { p: u32, k: u32 },
    #[error("invalid field descriptor {0:?}, expected \"p\" or \"p^k\"")]
    BadFieldDescriptor(String),
    #[error("element rank {rank} is not in a field of order {order}")]
    NotInField { rank: u64, order: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("at least one subset is required")]
    NoSubsets,
    #[error("expected {expected} deltas, got {got}")]
    DeltaCount { expected: usize, got: usize },
    #[error("subset {index} has {size} elements, need at least 2")]
    SubsetTooSmall { index: usize, size: usize },
    #[error("subset {index} contains element {rank} twice")]
    DuplicateElement { index: usize, rank: u32 },
    #[error("delta must be ≥ 2 (deltas[{index}] = {delta})")]
    DeltaTooSmall { index: usize, delta: i64 },
    #[error("locality |A| - delta + 1 = {r} of subset {index} must be ≥ 1")]
    LocalityTooSmall { index: usize, r: i64 },
    #[error("degree bound d = {d} is outside 0 ≤ d ≤ Σ(r_i - 1) = {max}")]
    DegreeOutOfRange { d: i64, max: u64 },
    #[error("code length overflows")]
    LengthOverflow,

    #[error("message has {got} symbols, code dimension is {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("word has {got} symbols, code length is {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("position {position} out of range for length {length}")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("direction {direction} out of range for availability {availability}")]
    DirectionOutOfRange { direction: usize, availability: usize },
    #[error(
        "insufficient data in direction {direction}: {available} known values, \
         {required} required (short by {})", required - available
    )]
    InsufficientData {
        direction: usize,
        available: usize,
        required: usize,
    },
    #[error("word is not a codeword")]
    NotACodeword,

    #[error("closed-form minimum distance needs ascending deltas, got {0:?}")]
    ClosedFormNotApplicable(Vec<u32>),
    #[error("brute force over {q}^{dimension} messages exceeds the guard of {limit}")]
    BruteForceGuard { q: u32, dimension: usize, limit: u64 },
    #[error("transversal point has {got} coordinates, expected {expected}")]
    TransversalArity { expected: usize, got: usize },
    #[error("transversal coordinate {rank} is not in subset {index}")]
    TransversalCoordinate { index: usize, rank: u32 },
    #[error("the zero message has no leading monomial")]
    ZeroMessage,

    #[error("invalid simulation config: {0}")]
    SimConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
