use clap::{Args, ValueEnum};
use triples::ksets::{gen_infmany, gen_infmany_twin, middle_swap};
use triples::oracle::generators::{
    gen_ambiguous_family, gen_apollonian, gen_apollonian_full, gen_bipyramid, gen_caveat_pair, gen_complete, gen_cycle,
    gen_cycle_chords, gen_fan, gen_gnp, gen_icosahedron, gen_octahedron, gen_path, gen_petersen, gen_star,
    gen_subdivided, gen_tree, shuffled, AmbiguousFamily,
};
use triples::{Error, Graph, Result};

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Family {
    Path,
    Star,
    Cycle,
    Complete,
    Fan,
    /// Uniform random labelled tree.
    Tree,
    /// `G(n, p)`.
    Gnp,
    /// `C_n` plus random non-crossing chords.
    CycleChords,
    /// `K4` plus `n - 4` stacked vertices.
    Apollonian,
    /// Every face stacked `--depth` times.
    ApollonianFull,
    /// Bipyramid over `C_n`.
    Bipyramid,
    Icosahedron,
    Octahedron,
    Petersen,
    /// Petersen graph with each edge subdivided `--depth` times.
    SubdividedPetersen,
    /// Path with its middle rearranged; shares sets above the tree threshold.
    MiddleSwap,
    /// `P_2k` joined to `P_n`.
    Infmany,
    /// The companion of `infmany` with the same (k+1)-sets.
    InfmanyTwin,
    CompleteMinusMatching,
    StarPlusMatching,
    PathWithDominators,
    /// Path `0-1-2` under a shared outside path of `n` vertices.
    Caveat,
    /// `caveat` with the edge `0-2` added.
    CaveatTriangle,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Edge probability for `gnp`.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Chord count, matched pairs or dominators, by family.
    #[arg(long, default_value_t = 1)]
    extra: usize,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Relabel vertices by a seeded permutation.
    #[arg(long)]
    shuffle: bool,
}

pub fn generate(a: &GenArgs, seed: u64) -> Result<Graph> {
    let g = match a.family {
        Family::Path => gen_path(a.n),
        Family::Star => gen_star(a.n),
        Family::Cycle => gen_cycle(a.n)?,
        Family::Complete => gen_complete(a.n),
        Family::Fan => gen_fan(a.n),
        Family::Tree => gen_tree(a.n, seed)?,
        Family::Gnp => gen_gnp(a.n, a.p, seed)?,
        Family::CycleChords => gen_cycle_chords(a.n, a.extra, seed)?,
        Family::Apollonian => {
            if a.n < 4 {
                return Err(Error::InvalidParameter("apollonian needs n >= 4".into()));
            }
            gen_apollonian(a.n - 4, seed)
        }
        Family::ApollonianFull => gen_apollonian_full(a.depth),
        Family::Bipyramid => gen_bipyramid(a.n)?,
        Family::Icosahedron => gen_icosahedron(),
        Family::Octahedron => gen_octahedron(),
        Family::Petersen => gen_petersen(),
        Family::SubdividedPetersen => gen_subdivided(&gen_petersen(), a.depth),
        Family::MiddleSwap => middle_swap(a.n)?.1,
        Family::Infmany => gen_infmany(a.k, a.n)?,
        Family::InfmanyTwin => gen_infmany_twin(a.k, a.n)?,
        Family::CompleteMinusMatching => {
            gen_ambiguous_family(AmbiguousFamily::CompleteMinusMatching { n: a.n, matched: a.extra })?
        }
        Family::StarPlusMatching => {
            gen_ambiguous_family(AmbiguousFamily::StarPlusMatching { leaves: a.n, matched: a.extra })?
        }
        Family::PathWithDominators => {
            gen_ambiguous_family(AmbiguousFamily::PathWithDominators { dominators: a.extra })?
        }
        Family::Caveat => gen_caveat_pair(a.n)?.0,
        Family::CaveatTriangle => gen_caveat_pair(a.n)?.1,
    };
    Ok(if a.shuffle { shuffled(&g, seed) } else { g })
}
