//! Nilpotent Lie algebras associated to graphs over the rationals, and the
//! classification of their rational and real forms through automorphisms of
//! the quotient graph on coherent components.

pub mod automorphisms;
pub mod cli;
pub mod descent;
pub mod error;
pub mod field;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod perm;

pub use error::{Error, Result};
pub use graph::{Graph, QuotientGraph};
pub use perm::Permutation;
