//! Dense random-like graphs: the three-property surrogate for `G(n, 1/2)`
//! and neighbourhood recovery from connected k-sets.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::kset::{for_each_subset, KSetCollection};
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};

/// How the "no large empty bipartite pair" property was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property3 {
    /// Exhaustive search finished.
    Verified { holds: bool },
    /// Random sets of the critical size were tried.
    Sampled { trials: u64, violated: bool },
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomLikeReport {
    pub property1: bool,
    pub property2: bool,
    pub property3: Property3,
}

impl RandomLikeReport {
    /// True unless some property is known to fail.
    pub fn holds(&self) -> bool {
        let p3 = match self.property3 {
            Property3::Verified { holds } => holds,
            Property3::Sampled { violated, .. } => !violated,
            Property3::Skipped => true,
        };
        self.property1 && self.property2 && p3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomLikeBudget {
    /// Search nodes for the exhaustive property-3 check.
    pub exhaustive_nodes: u64,
    /// Random trials when the exhaustive check runs out; 0 skips.
    pub samples: u64,
    pub seed: u64,
}

impl Default for RandomLikeBudget {
    fn default() -> Self {
        Self { exhaustive_nodes: 2_000_000, samples: 20_000, seed: 0 }
    }
}

fn slack(n: usize) -> f64 {
    let n = n as f64;
    3.0 * (n * n.log2()).sqrt()
}

/// Smallest size `s` with `s >= 2 log2 n`.
pub fn critical_size(n: usize) -> usize {
    (2.0 * (n.max(2) as f64).log2()).ceil() as usize
}

/// `ceil(n/2 + 4 sqrt(n log2 n))`, capped at `n`: sets this large are always
/// connected in a random-like graph.
pub fn no_information_size(n: usize) -> usize {
    let x = n as f64 / 2.0 + 4.0 * (n as f64 * (n.max(2) as f64).log2()).sqrt();
    (x.ceil() as usize).min(n)
}

pub fn is_random_like(g: &Graph) -> RandomLikeReport {
    is_random_like_with(g, RandomLikeBudget::default())
}

pub fn is_random_like_with(g: &Graph, budget: RandomLikeBudget) -> RandomLikeReport {
    let n = g.n();
    let nf = n as f64;
    let s = slack(n);
    let within = |x: usize, centre: f64| (x as f64) >= centre - s && (x as f64) <= centre + s;
    let property1 = (0..n as Vertex).all(|v| within(g.degree(v), nf / 2.0));
    let property2 = (0..n as Vertex).all(|v| {
        (0..n as Vertex)
            .filter(|&w| w != v)
            .all(|w| within(g.neighbors(v).filter(|&x| !g.has_edge(w, x)).count(), nf / 4.0))
    });
    RandomLikeReport { property1, property2, property3: property3(g, budget) }
}

fn property3(g: &Graph, budget: RandomLikeBudget) -> Property3 {
    let n = g.n();
    let size = critical_size(n);
    if 2 * size > n {
        return Property3::Verified { holds: true };
    }
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..n as Vertex)
        .map(|v| {
            let mut r = vec![0u64; words];
            for w in g.neighbors(v) {
                r[w as usize / 64] |= 1 << (w % 64);
            }
            r
        })
        .collect();
    // A violation exists iff some `size`-set A has at least `size` common
    // non-neighbours outside A. Adding to A only shrinks that set, so the
    // search prunes as soon as it drops below `size`.
    let mut full = vec![0u64; words];
    for v in 0..n {
        full[v / 64] |= 1 << (v % 64);
    }
    let mut nodes = 0u64;
    let mut found = false;
    let done = dfs3(&rows, size, 0, 0, &full, &mut nodes, budget.exhaustive_nodes, &mut found);
    if done {
        return Property3::Verified { holds: !found };
    }
    if budget.samples == 0 {
        return Property3::Skipped;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for t in 0..budget.samples {
        let a = sample(&mut rng, n, size);
        let mut rest = full.clone();
        for v in a.iter() {
            rest[v / 64] &= !(1 << (v % 64));
            for (x, r) in rest.iter_mut().zip(&rows[v]) {
                *x &= !r;
            }
        }
        if popcount(&rest) >= size {
            return Property3::Sampled { trials: t + 1, violated: true };
        }
    }
    Property3::Sampled { trials: budget.samples, violated: false }
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// `avail` is the set of vertices outside A not adjacent to A. Returns false
/// when the node budget ran out.
#[allow(clippy::too_many_arguments)]
fn dfs3(
    rows: &[Vec<u64>],
    size: usize,
    chosen: usize,
    from: usize,
    avail: &[u64],
    nodes: &mut u64,
    budget: u64,
    found: &mut bool,
) -> bool {
    *nodes += 1;
    if *nodes > budget {
        return false;
    }
    if chosen == size {
        *found = true;
        return true;
    }
    let n = rows.len();
    for v in from..n {
        if n - v < size - chosen {
            break;
        }
        let mut next = avail.to_vec();
        next[v / 64] &= !(1 << (v % 64));
        for (x, r) in next.iter_mut().zip(&rows[v]) {
            *x &= !r;
        }
        // B must avoid A too; members of A picked later come from `v+1..`.
        if popcount(&next) < size {
            continue;
        }
        if !dfs3(rows, size, chosen + 1, v + 1, &next, nodes, budget, found) {
            return false;
        }
        if *found {
            return true;
        }
    }
    true
}

/// Vertices certainly not adjacent to `v`: every component of `G - N[v]`
/// holding a connected k-set, grown from each detached k-set in turn.
fn non_neighbours(kc: &KSetCollection, v: Vertex) -> std::result::Result<Vec<bool>, String> {
    let (n, k) = (kc.n(), kc.k());
    let mut buf = Vec::with_capacity(k);
    let mut connected_with = |base: &[Vertex], extra: &[Vertex]| {
        buf.clear();
        buf.extend_from_slice(base);
        buf.extend_from_slice(extra);
        kc.contains_unsorted(&buf)
    };
    let mut found = vec![false; n];
    let mut seeded = false;
    for s in kc.iter() {
        if s.contains(&v) || s.iter().any(|&x| found[x as usize]) {
            continue;
        }
        // Step 1: S connected, S + v not.
        let detached = (0..k).all(|i| {
            let rest: Vec<Vertex> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            !connected_with(&rest, &[v])
        });
        if !detached {
            continue;
        }
        seeded = true;
        let mut set = s.to_vec();
        let mut in_set = vec![false; n];
        for &x in &set {
            in_set[x as usize] = true;
        }
        // Step 2: grow by the lowest admissible vertex.
        loop {
            let mut grew = false;
            for w in 0..n as Vertex {
                if w == v || in_set[w as usize] {
                    continue;
                }
                let mut joins = false;
                for_each_subset(&set, k - 1, |u| {
                    joins = connected_with(u, &[w]);
                    !joins
                });
                if !joins {
                    continue;
                }
                let mut apart = true;
                for_each_subset(&set, k - 2, |u| {
                    apart = !connected_with(u, &[w, v]);
                    apart
                });
                if apart {
                    set.push(w);
                    in_set[w as usize] = true;
                    grew = true;
                    break;
                }
            }
            if !grew {
                break;
            }
        }
        for x in set {
            found[x as usize] = true;
        }
    }
    if !seeded {
        return Err(format!("no connected {k}-set misses every neighbour of vertex {}", kc.labels().name(v)));
    }
    Ok(found)
}

/// Reconstructs a random-like graph from its connected k-sets. A vertex with
/// no detached k-set, or an answer with different k-sets, is `Inconsistent`;
/// the output is always re-extracted and compared.
pub fn reconstruct_random_like(kc: &KSetCollection, opts: ReconstructOptions, jobs: usize) -> Result<ReconstructionResult> {
    let n = kc.n();
    let kc_idx;
    let kc = if opts.index == crate::kset::IndexKind::Sorted {
        kc
    } else {
        kc_idx = kc.clone().with_index(opts.index);
        &kc_idx
    };
    let vertices: Vec<Vertex> = (0..n as Vertex).collect();
    let rows: Vec<std::result::Result<Vec<bool>, String>> = if jobs <= 1 {
        vertices.iter().map(|&v| non_neighbours(kc, v)).collect()
    } else {
        let chunk = n.div_ceil(jobs).max(1);
        std::thread::scope(|s| {
            let hs: Vec<_> = vertices
                .chunks(chunk)
                .map(|c| s.spawn(move || c.iter().map(|&v| non_neighbours(kc, v)).collect::<Vec<_>>()))
                .collect();
            hs.into_iter().flat_map(|h| h.join().expect("worker")).collect()
        })
    };
    let mut far = Vec::with_capacity(n);
    for r in rows {
        match r {
            Ok(row) => far.push(row),
            Err(reason) => return Ok(ReconstructionResult::Inconsistent(reason)),
        }
    }
    let mut g = Graph::new(kc.labels().clone());
    for u in 0..n {
        for w in u + 1..n {
            // Step 3: whatever neither endpoint rules out is an edge.
            if !far[u][w] && !far[w][u] {
                g.add_edge(u as Vertex, w as Vertex);
            }
        }
    }
    apply_verify(ReconstructionResult::Unique(g), kc, ReconstructOptions { verify: true, ..opts })
}
