//! Exact linear algebra over the rationals and prime fields: matrices,
//! canonical subspaces, and the subspace calculus used by every functor.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use matrix::Matrix;
pub use subspace::{solve_linear, QuotientMap, Subspace};
