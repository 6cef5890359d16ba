//! Permutation groups: stabiliser chains, searches, actions and series.

mod action;
mod blocks;
mod chain;
mod group;
mod perm;
mod search;
mod structure;

pub use action::*;
pub use blocks::*;
pub use chain::*;
pub use group::*;
pub use perm::*;
pub use search::*;
pub use structure::*;
