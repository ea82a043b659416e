//! Finite-dimensional modules: constructions, morphisms and characters.

mod character;
pub mod gl;
pub mod kac;
mod module;

pub use character::Character;
pub use gl::{exterior_power, gl_simple, twist_by_determinant, weyl_dimension};
pub use kac::{costandard, induce, simple, standard};
pub use module::{Block, BlockKey, PModule, Piece, SparseVec};

pub(crate) use module::{Echelon, Layout};
