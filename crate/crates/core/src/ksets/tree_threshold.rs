//! Trees from connected k-sets up to `k = ceil(n/2)`.
//!
//! Call `v` forced by `u` when every connected k-set holding `u` also holds
//! `v`. In a tree with `2k <= n + 1` this happens exactly when the branch at
//! `v` containing `u` has fewer than `k` vertices. Every vertex then has at
//! most one heavy branch, the sets `F(v) = {u : v forced by u}` are the
//! subtrees hanging off `v` away from the centre, and the parent of `u` is
//! the vertex whose `F` is the smallest one holding `u`. The vertices no
//! other vertex forces form a subtree; at `k = ceil(n/2)` it is the one or
//! two centroids, so smaller k are lifted until it is that small.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::{extract_ksets, KSetCollection};
use crate::lift::lift_ksets;
use crate::oracle::generators::{gen_path, tree_from_prufer};
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};

/// Largest witness search run when reporting an infeasible k.
pub const WITNESS_MAX_N: usize = 8;

/// Cap on connected sets produced while lifting.
pub const LIFT_BUDGET: u64 = 20_000_000;

/// `ceil(n/2)`: the largest k at which every tree is determined.
pub fn max_tree_k(n: usize) -> usize {
    n.div_ceil(2)
}

/// Reconstructs a tree from its connected k-sets, `2 <= k <= ceil(n/2)`.
pub fn reconstruct_tree_ksets(kc: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    let (n, k) = (kc.n(), kc.k());
    if n <= 2 {
        let edges: Vec<(Vertex, Vertex)> = if n == 2 { vec![(0, 1)] } else { vec![] };
        return apply_verify(ReconstructionResult::Unique(Graph::from_edges(kc.labels().clone(), &edges)?), kc, opts);
    }
    if k < 2 {
        return Err(Error::KOutOfRange { k, n, min: 2, max: max_tree_k(n) });
    }
    if k > max_tree_k(n) {
        let witnesses = if n <= WITNESS_MAX_N { trees_matching(kc)? } else { Vec::new() };
        return Err(Error::InfeasibleK { k, n, max_k: max_tree_k(n), witnesses });
    }
    let mut lifted;
    let mut cur = kc;
    let mut produced = 0u64;
    let res = loop {
        match forced_tree(cur) {
            Ok(Step::Done(edges)) => {
                break ReconstructionResult::Unique(Graph::from_edges(kc.labels().clone(), &edges)?);
            }
            Ok(Step::WideCore) if cur.k() < max_tree_k(n) => {
                lifted = lift_ksets(cur)?;
                produced += lifted.len() as u64;
                if produced > LIFT_BUDGET {
                    return Err(Error::BudgetExceeded { what: "tree k-set lifting", budget: LIFT_BUDGET });
                }
                cur = &lifted;
            }
            Ok(Step::WideCore) => break ReconstructionResult::inconsistent("more than two vertices are forced by nobody"),
            Err(reason) => break ReconstructionResult::Inconsistent(reason),
        }
    };
    apply_verify(res, kc, opts)
}

enum Step {
    Done(Vec<(Vertex, Vertex)>),
    /// More than two unforced vertices: k is too small to finish.
    WideCore,
}

/// `forced[u][v]`: every k-set holding `u` holds `v`.
fn forced_matrix(kc: &KSetCollection) -> Vec<Vec<bool>> {
    let n = kc.n();
    let mut together = vec![vec![0usize; n]; n];
    for s in kc.iter() {
        for &u in s {
            for &v in s {
                together[u as usize][v as usize] += 1;
            }
        }
    }
    (0..n).map(|u| (0..n).map(|v| u != v && together[u][v] == together[u][u]).collect()).collect()
}

fn forced_tree(kc: &KSetCollection) -> std::result::Result<Step, String> {
    let n = kc.n();
    let occ = kc.occurrences();
    if let Some(u) = occ.iter().position(|&c| c == 0) {
        return Err(format!("vertex {u} lies in no connected set"));
    }
    let forced = forced_matrix(kc);
    // |F(v)|: how many vertices force v.
    let weight: Vec<usize> = (0..n).map(|v| (0..n).filter(|&u| forced[u][v]).count()).collect();
    let mut edges = Vec::with_capacity(n - 1);
    let mut centre = Vec::new();
    for u in 0..n {
        let mut best: Option<(usize, usize)> = None;
        let mut tied = false;
        for w in (0..n).filter(|&w| forced[u][w]) {
            match best {
                Some((bw, _)) if weight[w] > bw => {}
                Some((bw, _)) if weight[w] == bw => tied = true,
                _ => {
                    best = Some((weight[w], w));
                    tied = false;
                }
            }
        }
        match best {
            None => centre.push(u as Vertex),
            Some(_) if tied => return Err(format!("vertex {u} has two candidate parents")),
            Some((_, p)) => edges.push(((u as Vertex).min(p as Vertex), (u as Vertex).max(p as Vertex))),
        }
    }
    match centre[..] {
        [_] => {}
        [a, b] => edges.push((a, b)),
        [] => return Err("every vertex is forced by another".into()),
        _ => return Ok(Step::WideCore),
    }
    edges.sort_unstable();
    edges.dedup();
    if edges.len() != n - 1 {
        return Err("parent links do not form a tree".into());
    }
    Ok(Step::Done(edges))
}

/// Every labelled tree whose connected k-sets equal `kc`, by Prüfer
/// enumeration. Limited to [`WITNESS_MAX_N`] vertices.
pub fn trees_matching(kc: &KSetCollection) -> Result<Vec<Graph>> {
    let n = kc.n();
    if n > WITNESS_MAX_N {
        return Err(Error::TooManyVertices { what: "tree enumeration", max: WITNESS_MAX_N, n });
    }
    if n <= 2 {
        let g = if n == 2 { Graph::with_edges(2, &[(0, 1)]) } else { Graph::empty(n) };
        return Ok(if extract_ksets(&g, kc.k())? == *kc { vec![g.with_labels(kc.labels().clone())] } else { vec![] });
    }
    let mut out = Vec::new();
    let mut seq = vec![0 as Vertex; n - 2];
    loop {
        let g = tree_from_prufer(&seq);
        if extract_ksets(&g, kc.k())? == *kc {
            out.push(g.with_labels(kc.labels().clone()));
        }
        // Next sequence in base n.
        let mut i = 0;
        while i < seq.len() && seq[i] as usize == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    Ok(out)
}

/// Reference answer by full enumeration of trees, for small `n`.
pub fn reconstruct_tree_ksets_exhaustive(kc: &KSetCollection) -> Result<ReconstructionResult> {
    let mut found = trees_matching(kc)?;
    Ok(match found.len() {
        0 => ReconstructionResult::inconsistent("no tree has these connected sets"),
        1 => ReconstructionResult::Unique(found.pop().expect("one")),
        _ => ReconstructionResult::Ambiguous(found),
    })
}

/// The path `0-1-...-(n-1)` with its middle rearranged so that both share
/// every connected set of size `ceil(n/2) + 1`: the two central vertices
/// swap when `n` is even, the outer two of the central three when odd.
pub fn middle_swap(n: usize) -> Result<(Graph, Graph)> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("middle swap needs at least 4 vertices, got {n}")));
    }
    let path = gen_path(n);
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    let m = n / 2;
    if n % 2 == 0 {
        order.swap(m - 1, m);
    } else {
        order.swap(m - 1, m + 1);
    }
    let edges: Vec<(Vertex, Vertex)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    Ok((path, Graph::with_edges(n, &edges)))
}
