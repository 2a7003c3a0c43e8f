//! Exact computations with finite-dimensional commutative local algebras.

pub mod algebra;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod io;
pub mod linalg;
pub mod products;
pub mod resolution;
pub mod series;

pub use error::{Error, Result};
