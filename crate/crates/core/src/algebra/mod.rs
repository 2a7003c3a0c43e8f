//! Local algebras: construction, ideal calculus and presentations.

pub mod build;
pub mod ideal;
pub mod inverse;
pub mod local;
pub mod parse;
pub mod poly;
pub mod present;

pub use build::{build_algebra, build_algebra_with_cap, Presentation, DEFAULT_TRUNCATION_CAP};
pub use ideal::StretchClass;
pub use inverse::{dual_names, from_inverse_system};
pub use local::{format_combination, LocalAlgebra};
pub use parse::{parse_poly, parse_poly_at};
pub use poly::{Monomial, Poly};
