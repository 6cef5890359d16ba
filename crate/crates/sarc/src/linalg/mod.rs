//! Finite fields, matrices, formed spaces and subspaces.

mod field;
mod matrix;
mod space;

pub use field::*;
pub use matrix::*;
pub use space::*;
