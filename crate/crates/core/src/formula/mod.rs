//! First-order lattice formulas: syntax, printing, evaluation over finite
//! structures, and builders for the dimension formulas.

mod ast;
pub mod builders;
mod eval;
mod parse;
mod print;

pub use ast::{Formula, Term};
pub use builders::{
    at_top, conn_formula, cut_formula, delta_formula, delta_formula_with, dg_formula,
    dg_formula_excluding_top, dg_formula_with, ind_formula, ind_formula_with, part_formula,
};
pub use eval::{
    eval, eval_with, find_witness, find_witness_with, first_witness, Assignment, Compiled, Scratch,
    Structure,
};
pub use parse::{parse, parse_with_params};
