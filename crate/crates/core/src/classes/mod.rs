//! Reconstruction under a class promise: triangle-free, 2-connected
//! outerplanar and maximal planar.

mod lookup;
mod maxplanar;
mod outerplanar;
mod triangle_free;

pub use lookup::{OccurrenceProfile, OrderedTripleList};
pub use maxplanar::{
    find_size3_separators, reconstruct_max_planar, reconstruct_max_planar_4connected, small_planar_side,
    SeparatorCertificate,
};
pub use outerplanar::{
    find_degree2_vertex_outerplanar, reconstruct_outerplanar_2connected, reconstruct_outerplanar_six,
    six_vertex_classes,
};
pub use triangle_free::reconstruct_triangle_free;

use crate::error::Result;
use crate::kset::KSetCollection;
use crate::oracle::{enumerate_consistent, ClassPredicate, OracleCaps};
use crate::result::ReconstructionResult;

/// Tiny inputs the reductions do not reach: ask the enumeration oracle.
fn oracle_fallback(t: &KSetCollection, filters: &[ClassPredicate]) -> Result<ReconstructionResult> {
    let report = enumerate_consistent(t, filters, OracleCaps::default())?;
    Ok(match report.count {
        0 => ReconstructionResult::inconsistent("no graph of the class has these triples"),
        1 => ReconstructionResult::Unique(report.witnesses.into_iter().next().expect("one witness")),
        _ => ReconstructionResult::Ambiguous(report.witnesses),
    })
}
