//! Named group constructions and order formulas.

mod construct;
mod orders;
mod spec;

pub use construct::*;
pub use orders::*;
pub use spec::*;
