//! Graphs with no cycle of length at most k, from their connected k-sets.
//!
//! Cycle edges come from the catalogue. Every other edge is a bridge. A
//! bridge touching a cycle `C` is read off the (k-1)-arcs of `C`: an
//! outside vertex with a single neighbour `a` on `C` connects exactly the
//! arcs through `a`. The rest grows outward in layers from the cycles.

use std::collections::BTreeSet;

use super::cycles::{recognize_cycles_with, CycleCatalog, DEFAULT_CYCLE_BUDGET};
use super::tree_threshold::reconstruct_tree_ksets;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::KSetCollection;
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};

type Edge = (Vertex, Vertex);

fn edge(a: Vertex, b: Vertex) -> Edge {
    (a.min(b), a.max(b))
}

/// Reconstructs a connected graph with no cycle of length at most `k`,
/// `k >= 4`. Trees need at least `2k - 1` vertices.
pub fn reconstruct_high_girth(kc: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    let (n, k) = (kc.n(), kc.k());
    if k < 4 || k > n {
        return Err(Error::KOutOfRange { k, n, min: 4, max: n });
    }
    let catalog = recognize_cycles_with(kc, DEFAULT_CYCLE_BUDGET)?;
    if catalog.is_empty() {
        // A tree: the threshold needs 2k <= n + 1.
        return reconstruct_tree_ksets(kc, opts);
    }
    let res = match from_catalog(kc, &catalog) {
        Ok(edges) => ReconstructionResult::Unique(Graph::from_edges(kc.labels().clone(), &edges)?),
        Err(reason) => ReconstructionResult::Inconsistent(reason),
    };
    apply_verify(res, kc, opts)
}

fn has(kc: &KSetCollection, set: &mut Vec<Vertex>) -> bool {
    set.sort_unstable();
    kc.contains(set)
}

/// Neighbours of `b` on the ordered cycle `c`, from which (k-1)-arcs it
/// connects. `None` when every arc is hit.
fn arc_neighbours(kc: &KSetCollection, c: &[Vertex], b: Vertex) -> std::result::Result<Option<Vec<Vertex>>, String> {
    let (l, w) = (c.len(), kc.k() - 1);
    let mut set = Vec::with_capacity(w + 1);
    let hits: Vec<bool> = (0..l)
        .map(|i| {
            set.clear();
            set.extend((0..w).map(|j| c[(i + j) % l]));
            set.push(b);
            has(kc, &mut set)
        })
        .collect();
    if hits.iter().all(|&h| h) {
        return Ok(None);
    }
    // Start scanning just after a miss so no run wraps.
    let miss = hits.iter().position(|&h| !h).expect("a miss");
    let mut out = Vec::new();
    let mut run = 0;
    for step in 1..=l {
        let i = (miss + step) % l;
        if hits[i] {
            run += 1;
            continue;
        }
        if run % w != 0 {
            return Err(format!("vertex {b} meets the cycle through {} in a run of {run} arcs", c[0]));
        }
        // Arc `s` holds positions s..s+w-1; a neighbour at p is hit by s in p-w+1..=p.
        let start = (i + l - run) % l;
        for j in 0..run / w {
            out.push(c[(start + w - 1 + j * w) % l]);
        }
        run = 0;
    }
    Ok(Some(out))
}

fn from_catalog(kc: &KSetCollection, catalog: &CycleCatalog) -> std::result::Result<Vec<Edge>, String> {
    let (n, k) = (kc.n(), kc.k());
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut cycles: Vec<&[Vertex]> = Vec::new();
    for e in &catalog.entries {
        let order = e.order.as_deref().ok_or_else(|| format!("cycle on {:?} has no attachment to order it", e.vertices))?;
        edges.extend(e.edges().expect("ordered"));
        cycles.push(order);
    }
    // Layer 0: cycle vertices, each remembering one cycle and its position.
    let mut layer = vec![usize::MAX; n];
    let mut parent = vec![Vertex::MAX; n];
    let mut home = vec![(usize::MAX, 0usize); n];
    for (ci, c) in cycles.iter().enumerate() {
        for (p, &v) in c.iter().enumerate() {
            layer[v as usize] = 0;
            home[v as usize] = (ci, p);
        }
    }
    let mut frontier = Vec::new();
    for c in &cycles {
        for b in (0..n as Vertex).filter(|&b| !c.contains(&b)) {
            let Some(nbrs) = arc_neighbours(kc, c, b)? else { continue };
            for &a in &nbrs {
                edges.insert(edge(a, b));
            }
            if layer[b as usize] == usize::MAX {
                if let Some(&a) = nbrs.first() {
                    layer[b as usize] = 1;
                    parent[b as usize] = a;
                    frontier.push(b);
                }
            }
        }
    }
    let mut depth = 1;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            let s = anchor(u, &parent, &layer, &home, &cycles, k - 1);
            let mut set = Vec::with_capacity(k);
            for x in 0..n as Vertex {
                if layer[x as usize] != usize::MAX && layer[x as usize] != depth {
                    continue;
                }
                set.clear();
                set.extend_from_slice(&s);
                set.push(x);
                if !has(kc, &mut set) {
                    continue;
                }
                if layer[x as usize] == depth {
                    return Err(format!("vertex {x} hangs below two vertices of one layer"));
                }
                layer[x as usize] = depth;
                parent[x as usize] = u;
                edges.insert(edge(u, x));
                next.push(x);
            }
        }
        frontier = next;
    }
    if let Some(v) = layer.iter().position(|&d| d == usize::MAX) {
        return Err(format!("vertex {v} is not reached from any cycle"));
    }
    Ok(edges.into_iter().collect())
}

/// Connected set of `size` vertices holding `u` and otherwise only vertices
/// closer to the cycles: `u`, its ancestors, then an arc of the cycle reached.
fn anchor(
    u: Vertex,
    parent: &[Vertex],
    layer: &[usize],
    home: &[(usize, usize)],
    cycles: &[&[Vertex]],
    size: usize,
) -> Vec<Vertex> {
    let mut s = vec![u];
    let mut cur = u;
    while layer[cur as usize] > 0 && s.len() < size {
        cur = parent[cur as usize];
        s.push(cur);
    }
    if s.len() < size {
        let (ci, p) = home[cur as usize];
        let c = cycles[ci];
        for j in 1..c.len() {
            if s.len() == size {
                break;
            }
            s.push(c[(p + j) % c.len()]);
        }
    }
    s
}
