//! Exact tools for synchronization questions about permutation groups and
//! finite automata.

pub mod bits;
pub mod catalogue;
pub mod classify;
pub mod error;
pub mod graph;
pub mod perm;
pub mod reset;
pub mod transform;
mod util;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use perm::{CayleyData, Orbital, OrbitalData, PermGroup, Permutation};
