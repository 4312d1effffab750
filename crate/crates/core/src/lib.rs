//! Computational toolkit for invariable generation of finite groups.

pub mod bsgs;
pub mod builder;
pub mod classes;
pub mod corpus;
pub mod crown;
pub mod experiments;
pub mod error;
pub mod finite;
pub mod igen;
pub mod fp;
pub mod lattice;
pub mod normal;
pub mod perm;
pub mod product_model;
pub mod structure;
pub mod suite;
pub mod tarski;

pub use bsgs::PermGroup;
pub use error::{Error, Result};
pub use finite::{Elem, FiniteGroup, Subgroup};
pub use perm::Perm;
