//! Lattice congruences of the weak order on permutations.
//!
//! Congruences are downsets of fences under the forcing order. From a
//! congruence this crate computes the equivalence classes, the quotient
//! graph, and a Hamilton path of the quotient through greedy minimal jumps.

pub mod analysis;
pub mod canon;
pub mod classes;
pub mod error;
pub mod fence;
pub mod genj;
pub mod patterns;
pub mod perm;
pub mod quotient;

pub use error::{Error, Result};
pub use fence::{ArcDiagram, Congruence, Fence};
pub use perm::{Direction, Permutation};
