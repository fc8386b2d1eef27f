//! Reconstruction outcomes and shared options.

use crate::error::Result;
use crate::graph::Graph;
use crate::kset::{extract_ksets, IndexKind, KSetCollection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReconstructionResult {
    Unique(Graph),
    /// At least two graphs share the input; carries explicit witnesses.
    Ambiguous(Vec<Graph>),
    /// No graph (in the promised class) fits; carries a reason.
    Inconsistent(String),
}

impl ReconstructionResult {
    pub fn unique(&self) -> Option<&Graph> {
        match self {
            Self::Unique(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Self::Unique(_))
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self, Self::Inconsistent(_))
    }

    pub fn inconsistent(reason: impl Into<String>) -> Self {
        Self::Inconsistent(reason.into())
    }
}

/// Knobs shared by the class reconstructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReconstructOptions {
    /// Re-extract the output and compare with the input.
    pub verify: bool,
    /// Membership structure used for lookups.
    pub index: IndexKind,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self { verify: false, index: IndexKind::Sorted }
    }
}

impl ReconstructOptions {
    pub fn verified() -> Self {
        Self { verify: true, ..Self::default() }
    }
}

/// True iff `g` has exactly the k-sets of `kc`.
pub fn reextracts_to(g: &Graph, kc: &KSetCollection) -> Result<bool> {
    Ok(g.n() == kc.n() && extract_ksets(g, kc.k())? == *kc)
}

/// Applies the verify option: a `Unique` output that does not reproduce the
/// input becomes `Inconsistent`.
pub fn apply_verify(res: ReconstructionResult, kc: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    if !opts.verify {
        return Ok(res);
    }
    if let ReconstructionResult::Unique(g) = &res {
        if !reextracts_to(g, kc)? {
            return Ok(ReconstructionResult::inconsistent(
                "verification failed: output does not re-extract to the input",
            ));
        }
    }
    Ok(res)
}
