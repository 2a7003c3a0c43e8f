//! Truncated power series, rational functions and Poincaré-series checks.

mod checks;
mod rational;
mod truncated;

pub use checks::*;
pub use rational::{IntPoly, RationalFn};
pub use truncated::TruncatedSeries;
