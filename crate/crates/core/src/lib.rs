pub mod cli;
pub mod error;
pub mod fusion;
pub mod group;
pub mod harness;
pub mod linalg;
pub mod modrep;
pub mod nilpotent;
pub mod perm;
pub mod scott;
pub mod semidihedral;

pub use error::{Error, Result};
pub use group::{parse_group_text, DirectProduct, GSet, Group, Subgroup};
pub use perm::Perm;
