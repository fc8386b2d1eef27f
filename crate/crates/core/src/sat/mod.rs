//! Consistent-graph search through a 2-SAT encoding over edge variables.

mod formula;
mod solver;
mod unique;

pub use formula::{
    build_full_formula, build_pruned_formula, Clause, ClauseKind, EdgeVar, Formula2Sat, Lit, PairWitnessMatrix,
};
pub use solver::{solve_2sat, solve_clauses, solve_with};
pub use unique::{
    check_unique, check_unique_connected, enumerate_solutions, reconstruct_any, SatOptions, UniquenessReport,
};
