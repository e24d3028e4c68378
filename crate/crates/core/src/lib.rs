//! Finite groups as Cayley tables, their non-commuting graphs, and a harness
//! that checks structural facts about those graphs on concrete groups.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod families;
pub mod graph;
pub mod group;
pub mod harness;
pub mod structure;

pub use error::{Error, Result};
pub use families::{builtin_catalog, matrix_group, parse_group_address, standard_family, Family, MatrixKind};
pub use group::{direct_product, subgroup_closure, FiniteGroup, Subgroup};
