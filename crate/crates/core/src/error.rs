use thiserror::Error;

use crate::lattice::TriIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank n = {n} is below the minimum {min}")]
    InvalidRank { n: usize, min: usize },

    #[error("{0} is frozen; mutation and paths need an unfrozen vertex")]
    FrozenVertex(TriIndex),

    #[error("{0} is unfrozen; a frozen vertex is required")]
    UnfrozenVertex(TriIndex),

    #[error("{v} is not a vertex of H_{n}")]
    NotInH { v: TriIndex, n: usize },

    #[error("c-vector of {0} has mixed signs")]
    SignCoherence(TriIndex),

    #[error("c-vector of {0} is zero")]
    ZeroCVector(TriIndex),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("negative binomial exponent {exponent} when pulling back through {vertex}")]
    NegativeExponent { vertex: TriIndex, exponent: i64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("unbounded: {0}")]
    Unbounded(String),

    #[error("resource guard: {0}")]
    Guard(String),

    #[error("infeasible: {0}")]
    Infeasible(String),
}
