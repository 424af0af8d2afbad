use thiserror::Error;

use crate::lattice::LatticeElement;
use crate::root_data::Coweight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {family}{rank}: {constraint}")]
    InvalidCartanType {
        family: char,
        rank: usize,
        constraint: &'static str,
    },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("coweight {found:?} has length {}, expected rank {expected}", found.len())]
    RankMismatch { expected: usize, found: Vec<i32> },
    #[error("coweight {0} is not dominant")]
    NotDominant(Coweight),
    #[error("coweight {0} is not strictly dominant")]
    NotStrictlyDominant(Coweight),
    #[error("lattice element is not Weyl-invariant")]
    NotInvariant,
    #[error("lattice element is not skew-invariant")]
    NotSkewInvariant,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: Box<LatticeElement> },
    #[error("Satake parameter coordinate {index} is zero")]
    ZeroSatakeCoordinate { index: usize },
    #[error("specialization of v makes a coefficient denominator vanish")]
    SingularSpecialization,
    #[error("Weyl group of order {order} exceeds the enumeration limit {limit}")]
    WeylGroupTooLarge { order: u64, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
