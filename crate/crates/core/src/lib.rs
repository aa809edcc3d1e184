pub mod bitset;
pub mod error;
pub mod group;
pub mod lattice;
pub mod numbers;
pub mod perm;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use lattice::SubgroupLattice;
pub mod structure;
pub mod dsl;
pub mod formation;
pub mod theorems;
