use thiserror::Error;

use crate::graph::Graph;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("set size k={k} out of range for {n} vertices (need {min} <= k <= {max})")]
    KOutOfRange { k: usize, n: usize, min: usize, max: usize },

    #[error("vertex index {index} outside universe of {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("invalid vertex label `{0}`")]
    InvalidLabel(String),

    #[error("duplicate vertex label `{0}` in header")]
    DuplicateLabel(String),

    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("duplicate set {0:?} in input")]
    DuplicateSet(Vec<String>),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("operation requires k={expected}, got k={got}")]
    WrongK { expected: usize, got: usize },

    #[error("{what} requires at least {min} vertices, got {n}")]
    TooFewVertices { what: &'static str, min: usize, n: usize },

    #[error("{what} supports at most {max} vertices, got {n}")]
    TooManyVertices { what: &'static str, max: usize, n: usize },

    #[error("budget of {budget} exceeded in {what}")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("k={k} exceeds the tree reconstruction threshold {max_k} for n={n}")]
    InfeasibleK { k: usize, n: usize, max_k: usize, witnesses: Vec<Graph> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
