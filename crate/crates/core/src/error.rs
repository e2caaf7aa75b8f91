use thiserror::Error;

use crate::algebra::GroupElement;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("no monic irreducible polynomial of degree {n} found over GF({p})")]
    NoIrreducible { p: u64, n: u32 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("operand does not belong to {0}")]
    ForeignElement(String),

    #[error("subfield degree {sub} does not divide extension degree {degree}")]
    SubDegree { sub: u32, degree: u32 },

    #[error("group of order {order} exceeds the exhaustive-verification cap of {cap}")]
    GroupTooLarge { order: u64, cap: u64 },

    #[error("{k} does not divide q - 1 = {q_minus_one}")]
    Divisibility { k: u64, q_minus_one: u64 },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("action acts on a different group")]
    GroupMismatch,

    #[error("action is not semiregular: member {member} fixes the nonzero element {witness}")]
    NotSemiregular { member: usize, witness: GroupElement },

    #[error("v*k = {v}*{k} is even; the orbit family cannot be split")]
    EvenOrderTimesK { v: u64, k: u64 },

    #[error("split verification failed: {0}")]
    SplitFailed(String),

    #[error("{factor} is not congruent to 1 mod {modulus}")]
    Congruence { factor: u64, modulus: u64 },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("family is not disjoint: blocks {0} and {1} intersect")]
    NotDisjoint(usize, usize),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("ingredient rejected: {0}")]
    Ingredient(String),

    #[error("expected exactly one uncovered element, found {0}")]
    UncoveredCount(u64),

    #[error("groups are not isomorphic: invariant factors {source_factors:?} vs {target_factors:?}")]
    NotIsomorphic {
        source_factors: Vec<u64>,
        target_factors: Vec<u64>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("constructed object failed verification: {0}")]
    Verification(String),
}
