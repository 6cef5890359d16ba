//! Group factorisations: predicates, the homogeneous factorisation search,
//! wreath product projections and the factorisation table audit.

mod audit;
mod expr;
mod search;
mod wreath;

pub use audit::*;
pub use expr::{eval_condition, eval_str, parse_expr, Env, Expr};
pub use search::*;
pub use wreath::*;
