//! Clique factors in dense graphs with small clique-independence number:
//! exact verifiers, extremal constructions, reduced multigraphs, gadget
//! tilings and absorption, all at desk scale.

pub mod absorb;
pub mod acceptance;
pub mod construct;
pub mod error;
pub mod graph_core;
pub mod rational;
pub mod reduce;
pub mod tile;
pub mod verify;

pub use error::{Error, Result};
pub use graph_core::{Graph, IndexVector, Multigraph2, Partition, Placement, Shape, Tiling};

/// Derives an independent stream seed from a master seed.
pub(crate) fn sub_seed(seed: u64, i: u64) -> u64 {
    seed ^ (i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
