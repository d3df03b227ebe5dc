//! Core library: finite groups, finite G-sets, indexing systems, the bispan
//! (polynomial) calculus with restricted exponents, and evaluable
//! (semi-)Tambara functor models.

pub mod bispan;
pub mod error;
pub mod group;
pub mod gset;
pub mod exponent;
pub mod indexing;
pub mod model;
pub mod selftest;
pub mod text;

pub use error::{Error, Result};
pub use group::{
    double_cosets, is_subconjugate, subgroup_lattice, FiniteGroup, Group, Subgroup,
    SubgroupLattice, MAX_GROUP_ORDER,
};
