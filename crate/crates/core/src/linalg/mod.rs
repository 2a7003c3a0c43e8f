//! Exact linear algebra over GF(p) and the rationals.

pub mod dense;
pub mod field;
pub mod sparse;
pub mod subspace;

pub use dense::{invert, kernel_basis, rref, solve, DenseMatrix, Rref};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals, DEFAULT_PRIME};
pub use sparse::{SparseEchelon, SparseVec};
pub use subspace::Subspace;
