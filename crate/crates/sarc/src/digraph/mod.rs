//! Coset digraphs, s-arc transitivity, orbitals and subspace actions.

mod coset;
mod geometry;
mod orbital;

pub use coset::*;
pub use geometry::*;
pub use orbital::*;
