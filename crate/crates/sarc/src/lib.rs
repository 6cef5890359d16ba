//! Computational group theory toolkit: permutation groups, finite-field
//! geometry, coset digraphs and homogeneous factorisations.

pub mod digraph;
pub mod error;
pub mod factor;
pub mod groups;
pub mod linalg;
pub mod numth;
pub mod permgroup;
pub mod subgroups;

pub use error::{Error, Result};
