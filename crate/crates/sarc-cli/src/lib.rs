//! Front end for the `sarc` binary: expression parsing, subcommands and the
//! named reproduction runs.

pub mod commands;
pub mod expr;
pub mod outcome;
pub mod repro;

pub use expr::parse_group_expr;
pub use outcome::{Outcome, Status};
