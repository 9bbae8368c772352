//! Command-line front end for the `dirseries` library.

pub mod app;
pub mod expr;

pub use app::run;
pub use expr::{eval, parse_expr, Expr, ExprError};
