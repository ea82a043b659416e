//! Exact rational scalars and dense linear algebra over Q.

mod matrix;
mod rational;

pub use matrix::{ExactMatrix, Subspace};
pub use rational::Rational;

