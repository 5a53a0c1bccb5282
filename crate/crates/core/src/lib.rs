//! Exact golden-field geometry for icosahedral groups, the D6 lattice
//! projection and the Danzer ABCK tetrahedral tiling.

pub mod error;
pub mod export;
pub mod geometry;
pub mod d6;
pub mod golden;
pub mod h3;
pub mod lift;
pub mod polyhedra;
pub mod report;
pub mod substitution;
pub mod tiles;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{GMat3, GVec3, Motion};
pub use golden::Golden;
pub use report::Report;
pub use d6::{D6Vector, PairM};
pub use lift::SignedPermutation;
pub use substitution::Patch;
pub use tiles::{Tile, TileKind};
