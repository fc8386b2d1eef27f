//! Reconstruction of labelled graphs from their connected k-sets.
//!
//! The main case is k = 3 (connected triples). General graphs go through a
//! 2-SAT encoding ([`sat`]); promised classes have dedicated reconstructors
//! ([`tree`], [`classes`], [`ksets`]); [`oracle`] is the brute-force ground truth.

pub mod classes;
pub mod error;
pub mod graph;
pub mod io;
pub mod ksets;
pub mod kset;
pub mod lift;
pub mod oracle;
pub mod result;
pub mod sat;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Graph, Labels, Vertex};
pub use kset::{extract_ksets, sort_ksets, DuplicatePolicy, IndexKind, KSet, KSetCollection, SortStats};
pub use lift::{lift_ksets, ConnectivityOracle};
pub use result::{ReconstructOptions, ReconstructionResult};
