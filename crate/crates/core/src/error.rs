use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("malformed permutation {text:?}: {reason}")]
    Syntax { text: String, reason: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("group is not transitive ({orbits} orbits)")]
    Intransitive { orbits: usize },
    #[error("orbital {0} is diagonal")]
    DiagonalOrbital(usize),
    #[error("expected a singular map, got a permutation")]
    BijectiveMap,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("contradictory constraints: {0}")]
    ContradictoryConstraints(String),
    #[error("group order exceeds the enumeration cap of {cap} elements")]
    EnumerationCap { cap: usize },
    #[error("out-degree is not constant: vertex {vertex} has {found}, expected {expected}")]
    NonConstantOutDegree { vertex: usize, found: usize, expected: usize },
    #[error("duplicate letter name {0:?}")]
    DuplicateLetter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
