//! Subgroup classes, conjugacy and isomorphism for groups small enough to
//! list element by element.

mod classes;
mod elements;
mod iso;

pub use classes::*;
pub use elements::*;
pub use iso::*;
pub use crate::permgroup::{intersection, intersection_order};
