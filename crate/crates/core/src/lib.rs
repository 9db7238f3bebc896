//! Exact computation with fusion systems on finite p-groups.
//!
//! Groups are permutation groups with every element enumerated. A fusion
//! system stores, for each pair of equal-order subgroups of its carrier, the
//! set of isomorphisms between them; general hom-sets are derived.

pub mod bitset;
pub mod catalog;
pub mod closure;
pub mod corpus;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hom;
pub mod io;
pub mod perm;
pub mod quotients;
pub mod solubility;
pub mod subsystems;
pub mod verify;
#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
pub use fusion::{FusionSystem, PreFusionSystem};
pub use group::{ElementId, Group, Subgroup, SubgroupKind, NONE};
pub use hom::GroupHom;
pub use perm::Perm;
