//! Separable permutations, di-sk trees, and the bijections that transport
//! permutation statistics between them.
//!
//! * [`perm`]: permutations and their statistics.
//! * [`disktree`]: di-sk trees, traversals, surgery primitives.
//! * [`bijections`]: the tree/permutation correspondence and the maps built on it.
//! * [`enumeration`]: exhaustive generators, counting sequences, distribution tables.
//! * [`series`]: truncated power series for the generating-function identities.
//! * [`verify`]: named exhaustive checks.

pub mod bijections;
pub mod disktree;
pub mod enumeration;
mod error;
pub mod perm;
pub mod series;
pub mod verify;

pub use disktree::{DiSkTree, NodeRef, Sign, TraversalOrder};
pub use error::{Error, Result};
pub use perm::{Permutation, StatProfile};
