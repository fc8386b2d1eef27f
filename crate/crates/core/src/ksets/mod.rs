//! Reconstruction from connected k-sets for larger k: trees up to the
//! threshold, random-like dense graphs and graphs of high girth.

mod cycles;
mod girth;
mod infmany;
mod random_like;
mod tree_threshold;

pub use cycles::{canonical_cycle, recognize_cycles, recognize_cycles_with, CatalogEntry, CycleCatalog, DEFAULT_CYCLE_BUDGET};
pub use girth::reconstruct_high_girth;
pub use infmany::{gen_infmany, gen_infmany_twin};
pub use random_like::{
    critical_size, is_random_like, is_random_like_with, no_information_size, reconstruct_random_like, Property3,
    RandomLikeBudget, RandomLikeReport,
};
pub use tree_threshold::{
    max_tree_k, middle_swap, reconstruct_tree_ksets, reconstruct_tree_ksets_exhaustive, trees_matching,
    WITNESS_MAX_N,
};
