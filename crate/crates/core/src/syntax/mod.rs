//! The text language shared by the CLI, the tests and the book: states such as
//! `(lower e 1 (dv)) |0>`, v-forms such as `v - v^2`, and forms on the simplex
//! such as `u[12]*u[21]/(z1-z2)`.
#![doc = include_str!("../../../../book/src/syntax.md")]

mod ast;
mod eval;
mod parse;

pub use ast::Expr;
pub use eval::{eval_form, eval_state, eval_vform, parse_form, parse_state, parse_vform};
pub use parse::parse;
