//! Exact restriction analysis for generalized Brauer characters of finite
//! permutation groups.
//!
//! The crate decides, for a permutation group `G`, a subgroup `H` and a prime
//! `p`, whether restriction `Z[IBr(G)] -> Z[IBr(H)]` is injective, whether it
//! is an isomorphism, and compares injectivity with the covering condition on
//! `p`-regular classes. Everything is computed exactly: ordinary character
//! tables over cyclotomic fields by Dixon-Schneider, and lattice indices via
//! Hermite and Smith normal forms.

pub mod brauer;
pub mod catalog;
pub mod chartab;
pub mod classes;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod rational;
pub mod spec;
pub mod subgroups;
pub mod sweep;
pub mod verify;

pub use brauer::{analyze, BrauerContext, GroupData, Restriction, RestrictionReport};
pub use chartab::{CharacterTable, ClassFunction};
pub use classes::{ClassList, ConjugacyClass};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use lattice::{IntMatrix, LatticeBasis};
pub use num_bigint::BigInt;
pub use perm::Perm;
pub use spec::{gens_spec, parse_group_spec, parse_subgroup_spec};
pub use subgroups::{class_fusion, enumerate_subgroups, SubgroupEmbedding, SubgroupLimits};
pub use sweep::{SweepConfig, SweepRow};
