//! Exact computations for the periplectic Lie superalgebra p(n).

pub mod ds;
pub mod error;
pub mod exact;
pub mod groth;
pub mod pn;
pub mod rep;
pub mod superspace;
pub mod translate;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, Rational, Subspace};
pub use pn::{AlgebraKind, Part, PnAlgebra};
pub use rep::{Character, PModule};
pub use superspace::{Parity, SuperMap, SuperSpace};
pub use weights::{Sign, Weight};
