//! Free Lie algebra combinatorics and the graph Lie algebra built on it.

pub mod algebra;
pub mod hall;
pub mod table;

pub use algebra::{build_algebra, build_algebra_with_budget, GradedAlgebra, LinearMap};
pub use table::BracketTable;
