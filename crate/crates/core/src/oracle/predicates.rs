//! Class predicates on concrete graphs. Minor-based tests are brute force
//! and size-capped.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest graph handed to the brute-force minor search.
pub const MINOR_MAX_N: usize = 11;

pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.edge_count() + 1 == g.n() && g.is_connected()
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges().into_iter().all(|(u, v)| !g.neighbors(u).any(|w| w != v && g.has_edge(v, w)))
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![u32::MAX; n];
    for s in 0..n as Vertex {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s as usize] = 0;
        parent[s as usize] = u32::MAX;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    parent[w as usize] = u;
                    queue.push_back(w);
                } else if parent[u as usize] != w {
                    let len = dist[u as usize] + dist[w as usize] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Connected, at least three vertices, and no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return false;
    }
    (0..n as Vertex).all(|x| {
        let rest: Vec<Vertex> = (0..n as Vertex).filter(|&v| v != x).collect();
        g.connected_unchecked(&rest)
    })
}

/// Target graph for a minor search, with groups of interchangeable vertices
/// so that branch-set labels can be assigned canonically.
struct Pattern {
    h: usize,
    edges: Vec<(usize, usize)>,
    groups: Vec<Vec<usize>>,
}

fn complete(h: usize) -> Pattern {
    let mut edges = Vec::new();
    for a in 0..h {
        for b in a + 1..h {
            edges.push((a, b));
        }
    }
    Pattern { h, edges, groups: vec![(0..h).collect()] }
}

fn complete_bipartite(p: usize, q: usize) -> Pattern {
    let mut edges = Vec::new();
    for a in 0..p {
        for b in p..p + q {
            edges.push((a, b));
        }
    }
    Pattern { h: p + q, edges, groups: vec![(0..p).collect(), (p..p + q).collect()] }
}

fn check_size(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > MINOR_MAX_N {
        return Err(Error::TooManyVertices { what, max: MINOR_MAX_N, n: g.n() });
    }
    Ok(())
}

/// Exhaustive branch-set search for `pat` as a minor of `g`.
fn has_minor(g: &Graph, pat: &Pattern) -> bool {
    let n = g.n();
    if n < pat.h || g.edge_count() < pat.edges.len() {
        return false;
    }
    let adj: Vec<u64> = (0..n as Vertex).map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w)).collect();
    let mut group_of = vec![0usize; pat.h];
    let mut rank = vec![0usize; pat.h];
    for (gi, grp) in pat.groups.iter().enumerate() {
        for (r, &x) in grp.iter().enumerate() {
            group_of[x] = gi;
            rank[x] = r;
        }
    }
    let mut sets = vec![0u64; pat.h];
    let mut used = vec![0usize; pat.groups.len()];
    search(0, n, &adj, pat, &group_of, &rank, &mut sets, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search(
    v: usize,
    n: usize,
    adj: &[u64],
    pat: &Pattern,
    group_of: &[usize],
    rank: &[usize],
    sets: &mut [u64],
    used: &mut [usize],
) -> bool {
    let unused: usize = pat.groups.iter().zip(used.iter()).map(|(g, &u)| g.len() - u).sum();
    if n - v < unused {
        return false;
    }
    if v == n {
        return sets.iter().all(|&s| mask_connected(s, adj))
            && pat.edges.iter().all(|&(a, b)| touches(sets[a], sets[b], adj));
    }
    // Leave v out of every branch set.
    if search(v + 1, n, adj, pat, group_of, rank, sets, used) {
        return true;
    }
    for x in 0..pat.h {
        let gi = group_of[x];
        // Labels within a group are opened in order.
        if rank[x] > used[gi] {
            continue;
        }
        let opened = rank[x] == used[gi];
        if opened {
            used[gi] += 1;
        }
        sets[x] |= 1 << v;
        let found = search(v + 1, n, adj, pat, group_of, rank, sets, used);
        sets[x] &= !(1 << v);
        if opened {
            used[gi] -= 1;
        }
        if found {
            return true;
        }
    }
    false
}

fn mask_connected(set: u64, adj: &[u64]) -> bool {
    if set == 0 {
        return false;
    }
    let mut reach = 1u64 << set.trailing_zeros();
    loop {
        let mut next = reach;
        let mut bits = reach;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v] & set;
        }
        if next == reach {
            return reach == set;
        }
        reach = next;
    }
}

fn touches(a: u64, b: u64, adj: &[u64]) -> bool {
    let mut bits = a;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if adj[v] & b != 0 {
            return true;
        }
    }
    false
}

/// No `K4` and no `K2,3` minor.
pub fn is_outerplanar(g: &Graph) -> Result<bool> {
    check_size(g, "outerplanarity test")?;
    Ok(!has_minor(g, &complete(4)) && !has_minor(g, &complete_bipartite(2, 3)))
}

pub fn is_outerplanar_2connected(g: &Graph) -> Result<bool> {
    Ok(is_biconnected(g) && is_outerplanar(g)?)
}

/// No `K5` and no `K3,3` minor.
pub fn is_planar(g: &Graph) -> Result<bool> {
    check_size(g, "planarity test")?;
    if g.n() >= 3 && g.edge_count() > 3 * g.n() - 6 {
        return Ok(false);
    }
    Ok(!has_minor(g, &complete(5)) && !has_minor(g, &complete_bipartite(3, 3)))
}

/// Planar, connected, and `e = 3n - 6` (every face a triangle).
pub fn is_maximal_planar(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 3 || g.edge_count() != 3 * n - 6 || !g.is_connected() {
        return Ok(false);
    }
    is_planar(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n as Vertex).map(|i| (i, (i + 1) % n as Vertex)).collect();
        Graph::with_edges(n, &edges)
    }

    fn octahedron() -> Graph {
        let mut g = k(6);
        for i in 0..3 {
            g.remove_edge(i, i + 3);
        }
        g
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::with_edges(10, &e)
    }

    #[test]
    fn small_classes() {
        assert!(!is_outerplanar(&k(4)).unwrap());
        assert!(is_outerplanar(&cycle(6)).unwrap());
        assert!(is_outerplanar_2connected(&cycle(6)).unwrap());
        assert!(is_maximal_planar(&octahedron()).unwrap());
        assert!(!is_outerplanar(&octahedron()).unwrap());
        assert!(!is_planar(&k(5)).unwrap());
        assert!(is_planar(&k(4)).unwrap());
        assert!(!is_planar(&petersen()).unwrap());
        let k23 = Graph::with_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(!is_outerplanar(&k23).unwrap());
        assert!(is_planar(&k23).unwrap());
    }

    #[test]
    fn girth_values() {
        assert_eq!(girth(&petersen()), Some(5));
        assert_eq!(girth(&cycle(7)), Some(7));
        assert_eq!(girth(&k(4)), Some(3));
        assert_eq!(girth(&Graph::with_edges(3, &[(0, 1), (1, 2)])), None);
    }

    #[test]
    fn trees_and_triangles() {
        assert!(is_tree(&Graph::with_edges(3, &[(0, 1), (1, 2)])));
        assert!(!is_tree(&cycle(3)));
        assert!(is_triangle_free(&cycle(4)));
        assert!(!is_triangle_free(&k(3)));
        assert!(is_triangle_free(&petersen()));
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(matches!(is_outerplanar(&cycle(12)), Err(Error::TooManyVertices { .. })));
    }
}
