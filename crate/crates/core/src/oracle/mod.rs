//! Brute-force ground truth: exhaustive enumeration, class predicates and
//! the graph generators used throughout the tests.

pub mod enumerate;
pub mod generators;
pub mod predicates;

pub use enumerate::{enumerate_consistent, ClassPredicate, OracleCaps, OracleReport};
