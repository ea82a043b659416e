use thiserror::Error;

use crate::superspace::Parity;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix entry ({row},{col}) breaks parity homogeneity")]
    NotHomogeneous { row: usize, col: usize },
    #[error("element is not in the span of the algebra basis: {0}")]
    NotInSpan(String),
    #[error("rank must be even with 2 <= s <= n (got n={n}, s={s})")]
    InvalidRank { n: usize, s: usize },
    #[error("weight {0:?} is not dominant (entries must be nondecreasing)")]
    NotDominant(Vec<i64>),
    #[error("weight {weight:?} has length {found}, expected {expected}")]
    WeightLength { weight: Vec<i64>, expected: usize, found: usize },
    #[error("weight {weight:?} exceeds the supported bound |λ_i| <= {bound}")]
    WeightOutOfRange { weight: Vec<i64>, bound: i64 },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("Cartan element h{index} does not act by its weight on block {weight:?} ({parity})")]
    NonIntegralCartan { index: usize, weight: Vec<i64>, parity: Parity },
    #[error("tensor Casimir has a non-integer eigenvalue on block {0:?}")]
    NonIntegerEigenvalue(Vec<i64>),
    #[error("subspace is not stable under the action: {0}")]
    NotSubmodule(String),
    #[error("bracket law fails for basis pair ({0}, {1})")]
    BracketLaw(String, String),
    #[error("negative multiplicity while peeling weight {weight:?} ({parity})")]
    NegativeMultiplicity { weight: Vec<i64>, parity: Parity },
    #[error("expected a {expected}-dimensional hom space, found {found}")]
    HomDimension { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
}
