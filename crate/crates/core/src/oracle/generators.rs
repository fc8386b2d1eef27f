//! Deterministic, seeded graph generators for tests and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Decodes a Prüfer sequence over `0..seq.len()+2`.
pub fn tree_from_prufer(seq: &[Vertex]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v as usize] += 1;
    }
    let mut g = Graph::empty(n);
    let mut leaves: std::collections::BTreeSet<Vertex> =
        (0..n as Vertex).filter(|&v| degree[v as usize] == 1).collect();
    for &v in seq {
        let leaf = leaves.pop_first().expect("a leaf exists");
        g.add_edge(leaf, v);
        degree[v as usize] -= 1;
        if degree[v as usize] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<Vertex> = leaves.into_iter().collect();
    g.add_edge(last[0], last[1]);
    g
}

/// Uniform random labelled tree.
pub fn gen_tree(n: usize, seed: u64) -> Result<Graph> {
    match n {
        0 => Err(invalid("tree needs at least one vertex")),
        1 => Ok(Graph::empty(1)),
        2 => Ok(Graph::with_edges(2, &[(0, 1)])),
        _ => {
            let mut r = rng(seed);
            let seq: Vec<Vertex> = (0..n - 2).map(|_| r.gen_range(0..n as Vertex)).collect();
            Ok(tree_from_prufer(&seq))
        }
    }
}

/// Every labelled tree on `n` vertices, in Prüfer order.
pub fn all_trees(n: usize) -> Vec<Graph> {
    if n <= 2 {
        return gen_tree(n, 0).into_iter().collect();
    }
    let total = n.pow(n as u32 - 2);
    (0..total)
        .map(|mut code| {
            let seq: Vec<Vertex> = (0..n - 2)
                .map(|_| {
                    let d = (code % n) as Vertex;
                    code /= n;
                    d
                })
                .collect();
            tree_from_prufer(&seq)
        })
        .collect()
}

pub fn gen_path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
    Graph::with_edges(n, &edges)
}

/// Star with centre `0`.
pub fn gen_star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as Vertex).map(|i| (0, i)).collect();
    Graph::with_edges(n, &edges)
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n as Vertex).map(|i| (i, (i + 1) % n as Vertex)).collect();
    Ok(Graph::with_edges(n, &edges))
}

pub fn gen_complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            g.add_edge(u, v);
        }
    }
    g
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut r = rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize| a.0 < x && x < a.1;
    let shares = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shares && inside(b.0) != inside(b.1)
}

/// Cycle `C_n` with `chords` non-crossing chords, relabelled at random.
/// Always 2-connected outerplanar.
pub fn gen_cycle_chords(n: usize, chords: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least 3 vertices"));
    }
    if chords > n - 3 {
        return Err(invalid(format!("at most {} non-crossing chords fit in C_{n}", n - 3)));
    }
    let mut r = rng(seed);
    let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
    perm.shuffle(&mut r);
    let mut picked: Vec<(usize, usize)> = Vec::new();
    // Grow a maximal non-crossing set in random order; any prefix works.
    let mut cands: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if !(i == 0 && j == n - 1) {
                cands.push((i, j));
            }
        }
    }
    cands.shuffle(&mut r);
    for c in cands {
        if picked.len() == chords {
            break;
        }
        if picked.iter().all(|&p| !crosses(p, c)) {
            picked.push(c);
        }
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge(perm[i], perm[(i + 1) % n]);
    }
    for (i, j) in picked {
        g.add_edge(perm[i], perm[j]);
    }
    Ok(g)
}

/// Labelled 2-connected outerplanar graph on the cycle `order` with the
/// given chords (positions along the cycle).
pub fn cycle_with_chords(order: &[Vertex], chords: &[(usize, usize)]) -> Graph {
    let n = order.len();
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge(order[i], order[(i + 1) % n]);
    }
    for &(i, j) in chords {
        g.add_edge(order[i], order[j]);
    }
    g
}

/// Every set of pairwise non-crossing chords of `C_n` (positions `0..n`).
pub fn non_crossing_chord_sets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut cands = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if !(i == 0 && j == n - 1) {
                cands.push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(i: usize, cands: &[(usize, usize)], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == cands.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, cands, cur, out);
        if cur.iter().all(|&p| !crosses(p, cands[i])) {
            cur.push(cands[i]);
            rec(i + 1, cands, cur, out);
            cur.pop();
        }
    }
    rec(0, &cands, &mut cur, &mut out);
    out
}

/// `K4` plus `insertions` stacked vertices, each placed in a random face.
pub fn gen_apollonian(insertions: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let n = 4 + insertions;
    let mut g = Graph::empty(n);
    for u in 0..4 {
        for v in u + 1..4 {
            g.add_edge(u, v);
        }
    }
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for x in 4..n as Vertex {
        let f = faces.swap_remove(r.gen_range(0..faces.len()));
        for &c in &f {
            g.add_edge(x, c);
        }
        faces.extend([[f[0], f[1], x], [f[0], f[2], x], [f[1], f[2], x]]);
    }
    g
}

/// Full Apollonian network: a triangle whose inner faces are all stacked
/// `depth` times (depth 1 is `K4`, depth 2 has 7 vertices).
pub fn gen_apollonian_full(depth: usize) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1), (0, 2), (1, 2)];
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2]];
    let mut next = 3;
    for _ in 0..depth {
        let mut new_faces = Vec::with_capacity(faces.len() * 3);
        for f in faces {
            let x = next;
            next += 1;
            edges.extend(f.iter().map(|&c| (c, x)));
            new_faces.extend([[f[0], f[1], x], [f[0], f[2], x], [f[1], f[2], x]]);
        }
        faces = new_faces;
    }
    Graph::with_edges(next as usize, &edges)
}

/// Replaces every edge by a path with `times` new interior vertices.
pub fn gen_subdivided(g: &Graph, times: usize) -> Graph {
    let edges = g.edges();
    let n = g.n() + edges.len() * times;
    let mut out = Graph::empty(n);
    let mut next = g.n() as Vertex;
    for (u, v) in edges {
        let mut prev = u;
        for _ in 0..times {
            out.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        out.add_edge(prev, v);
    }
    out
}

/// Families of graphs sharing their connected triples with other graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbiguousFamily {
    /// `K_n` minus a matching of the given size: every triple is connected.
    CompleteMinusMatching { n: usize, matched: usize },
    /// Star with centre `0` plus a matching among its leaves.
    StarPlusMatching { leaves: usize, matched: usize },
    /// Path `0-1-2-3` with an independent set of `dominators` joined to it.
    PathWithDominators { dominators: usize },
}

pub fn gen_ambiguous_family(family: AmbiguousFamily) -> Result<Graph> {
    match family {
        AmbiguousFamily::CompleteMinusMatching { n, matched } => {
            if n < 3 || 2 * matched > n {
                return Err(invalid("need n >= 3 and 2*matched <= n"));
            }
            let mut g = gen_complete(n);
            for i in 0..matched as Vertex {
                g.remove_edge(2 * i, 2 * i + 1);
            }
            Ok(g)
        }
        AmbiguousFamily::StarPlusMatching { leaves, matched } => {
            if leaves < 2 || 2 * matched > leaves {
                return Err(invalid("need leaves >= 2 and 2*matched <= leaves"));
            }
            let mut g = gen_star(leaves + 1);
            for i in 0..matched as Vertex {
                g.add_edge(2 * i + 1, 2 * i + 2);
            }
            Ok(g)
        }
        AmbiguousFamily::PathWithDominators { dominators } => {
            if dominators == 0 {
                return Err(invalid("need at least one dominating vertex"));
            }
            let mut g = Graph::empty(4 + dominators);
            for i in 0..3 {
                g.add_edge(i, i + 1);
            }
            for s in 4..(4 + dominators) as Vertex {
                for p in 0..4 {
                    g.add_edge(s, p);
                }
            }
            Ok(g)
        }
    }
}

/// Path `u-v-w` (vertices `0,1,2`) whose vertices all see the same outside
/// path on `outside` vertices; returns it with the triangle variant. Both
/// share every connected k-set for `k >= 3`.
pub fn gen_caveat_pair(outside: usize) -> Result<(Graph, Graph)> {
    if outside == 0 {
        return Err(invalid("need at least one outside vertex"));
    }
    let n = 3 + outside;
    let mut g = Graph::empty(n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    for x in 3..n as Vertex {
        for c in 0..3 {
            g.add_edge(x, c);
        }
        if x > 3 {
            g.add_edge(x - 1, x);
        }
    }
    let mut tri = g.clone();
    tri.add_edge(0, 2);
    Ok((g, tri))
}

/// Bipyramid over `C_rim`: apexes `rim` and `rim + 1`.
pub fn gen_bipyramid(rim: usize) -> Result<Graph> {
    let cycle = gen_cycle(rim)?;
    let mut g = Graph::empty(rim + 2);
    for (u, v) in cycle.edges() {
        g.add_edge(u, v);
    }
    for i in 0..rim as Vertex {
        g.add_edge(rim as Vertex, i);
        g.add_edge(rim as Vertex + 1, i);
    }
    Ok(g)
}

pub fn gen_icosahedron() -> Graph {
    // Two apexes 0 and 11, upper ring 1..=5, lower ring 6..=10.
    let mut g = Graph::empty(12);
    for i in 0..5u32 {
        let (a, b) = (1 + i, 1 + (i + 1) % 5);
        let (c, d) = (6 + i, 6 + (i + 1) % 5);
        g.add_edge(0, a);
        g.add_edge(11, c);
        g.add_edge(a, b);
        g.add_edge(c, d);
        g.add_edge(a, c);
        g.add_edge(b, c);
    }
    g
}

pub fn gen_octahedron() -> Graph {
    let mut g = gen_complete(6);
    for i in 0..3 {
        g.remove_edge(i, i + 3);
    }
    g
}

pub fn gen_petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::with_edges(10, &e)
}

/// Fan: path `1..n-1` plus vertex `0` adjacent to all of it.
pub fn gen_fan(n: usize) -> Graph {
    let mut g = gen_star(n);
    for i in 2..n as Vertex {
        g.add_edge(i - 1, i);
    }
    g
}

/// Random relabelling of `g` (labels stay `0..n` by index).
pub fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<Vertex> = (0..g.n() as Vertex).collect();
    perm.shuffle(&mut rng(seed));
    g.permuted(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::predicates::*;

    #[test]
    fn trees_are_deterministic_and_valid() {
        assert_eq!(gen_tree(7, 42).unwrap(), gen_tree(7, 42).unwrap());
        for s in 0..20 {
            assert!(is_tree(&gen_tree(9, s).unwrap()));
        }
        assert_eq!(all_trees(5).len(), 125);
        assert!(all_trees(5).iter().all(is_tree));
    }

    #[test]
    fn chord_sets_counted() {
        // Dissections of a convex hexagon, all sizes: 1 + 9 + 21 + 14.
        assert_eq!(non_crossing_chord_sets(6).len(), 45);
    }

    #[test]
    fn classic_solids() {
        let ico = gen_icosahedron();
        assert_eq!(ico.edge_count(), 30);
        assert!((0..12).all(|v| ico.degree(v) == 5));
        let bp = gen_bipyramid(5).unwrap();
        assert_eq!(bp.edge_count(), 15);
        assert!(is_maximal_planar(&bp).unwrap());
        assert!(is_maximal_planar(&gen_octahedron()).unwrap());
    }

    #[test]
    fn apollonian_counts() {
        let g = gen_apollonian(5, 1);
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 3 * 9 - 6);
        assert!(is_maximal_planar(&gen_apollonian(4, 7)).unwrap());
        let full = gen_apollonian_full(2);
        assert_eq!(full.n(), 7);
        assert_eq!(gen_apollonian_full(1), gen_complete(4));
        assert_eq!(full.edge_count(), 3 * full.n() - 6);
    }

    #[test]
    fn cycle_chords_are_outerplanar() {
        for s in 0..10 {
            let g = gen_cycle_chords(8, 2, s).unwrap();
            assert_eq!(g.edge_count(), 10);
            assert!(is_outerplanar_2connected(&g).unwrap());
        }
        assert!(gen_cycle_chords(6, 4, 0).is_err());
    }

    #[test]
    fn subdivision_raises_girth() {
        let g = gen_subdivided(&gen_complete(4), 1);
        assert_eq!(g.n(), 10);
        assert_eq!(girth(&g), Some(6));
    }
}
