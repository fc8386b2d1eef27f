//! Trees from their connected triples.

mod base;
mod index;
mod reduce;

pub use base::{base_case_five, five_vertex_profiles, FiveShape};
pub use index::{classify_vertex, VertexClass, VertexTripleIndex};
pub use reduce::{Reduction, ReductionLog, RoundStats, TreeStats};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::KSetCollection;
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};

use base::{small_tree, SmallTree};

/// Every triple of `index` containing `u` also contains `v`.
pub fn dominates(v: Vertex, u: Vertex, index: &VertexTripleIndex) -> bool {
    index.dominates(v, u)
}

/// Reconstructs the tree whose connected triples are `t`.
pub fn reconstruct_tree(t: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    reconstruct_tree_with_stats(t, opts).map(|(r, _)| r)
}

pub fn reconstruct_tree_with_stats(t: &KSetCollection, opts: ReconstructOptions) -> Result<(ReconstructionResult, TreeStats)> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    let n = t.n();
    let labels = t.labels();
    let mut stats = TreeStats::default();
    let triples: Vec<[Vertex; 3]> = t.iter().map(|s| [s[0], s[1], s[2]]).collect();
    let res = match n {
        0 | 1 => ReconstructionResult::Unique(Graph::new(labels.clone())),
        2 => ReconstructionResult::Unique(Graph::from_edges(labels.clone(), &[(0, 1)])?),
        3 | 4 => match small_tree(labels, &triples) {
            Some(SmallTree::Unique(g)) => ReconstructionResult::Unique(g),
            Some(SmallTree::Ambiguous(ws)) => ReconstructionResult::Ambiguous(ws),
            None => ReconstructionResult::inconsistent(format!("{} triples fit no tree on {n} vertices", t.len())),
        },
        _ => {
            let mut log = ReductionLog::default();
            stats.touches += t.flat().len() as u64;
            match reduce::reduce_to_base(n, t.flat(), &mut log, &mut stats) {
                Ok(edges) => {
                    let mut g = Graph::from_edges(labels.clone(), &edges)?;
                    log.replay(&mut g);
                    ReconstructionResult::Unique(g)
                }
                Err(reason) => ReconstructionResult::Inconsistent(reason),
            }
        }
    };
    Ok((apply_verify(res, t, opts)?, stats))
}
