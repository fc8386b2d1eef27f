//! Induced cycles of a graph with no cycle of length at most k.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::kset::{for_each_subset, KSetCollection};
use crate::lift::lift_ksets;

/// Cap on the number of connected sets generated while searching.
pub const DEFAULT_CYCLE_BUDGET: u64 = 4_000_000;

/// One recognised induced cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Cyclic order starting at the smallest vertex and heading to its
    /// smaller neighbour; `None` when the order could not be pinned down.
    pub order: Option<Vec<Vertex>>,
}

impl CatalogEntry {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges of the cycle, if ordered.
    pub fn edges(&self) -> Option<Vec<(Vertex, Vertex)>> {
        let o = self.order.as_ref()?;
        Some((0..o.len()).map(|i| {
            let (a, b) = (o[i], o[(i + 1) % o.len()]);
            (a.min(b), a.max(b))
        }).collect())
    }
}

/// Induced cycles by increasing length, then by vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleCatalog {
    pub entries: Vec<CatalogEntry>,
    /// Connected sets generated during the search.
    pub sets_examined: u64,
}

impl CycleCatalog {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// No induced cycle at all: under the promise, the graph is a forest.
    pub fn is_tree_verdict(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn of_length(&self, len: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.len() == len)
    }
}

/// Rotation and reflection normal form of a cyclic order.
pub fn canonical_cycle(order: &[Vertex]) -> Vec<Vertex> {
    let l = order.len();
    if l < 3 {
        return order.to_vec();
    }
    let start = (0..l).min_by_key(|&i| order[i]).expect("non-empty");
    let (next, prev) = (order[(start + 1) % l], order[(start + l - 1) % l]);
    if next <= prev {
        (0..l).map(|i| order[(start + i) % l]).collect()
    } else {
        (0..l).map(|i| order[(start + l - i) % l]).collect()
    }
}

pub fn recognize_cycles(kc: &KSetCollection) -> Result<CycleCatalog> {
    recognize_cycles_with(kc, DEFAULT_CYCLE_BUDGET)
}

/// Recognises every induced cycle, assuming no cycle of length at most `k`.
/// A set of size `l > k` is an induced cycle when each one-vertex deletion
/// is connected and no shorter catalogued cycle lies inside it.
pub fn recognize_cycles_with(kc: &KSetCollection, budget: u64) -> Result<CycleCatalog> {
    let (n, k) = (kc.n(), kc.k());
    if k < 4 || k > n {
        return Err(Error::KOutOfRange { k, n, min: 4, max: n });
    }
    if n > 128 {
        return Err(Error::TooManyVertices { what: "cycle recognition", max: 128, n });
    }
    let mask = |s: &[Vertex]| s.iter().fold(0u128, |m, &v| m | 1u128 << v);
    // levels[j] holds the connected sets of size k + j.
    let mut levels = vec![kc.clone()];
    let mut found: Vec<u128> = Vec::new();
    let mut sets = Vec::new();
    let mut examined = kc.len() as u64;
    for size in k + 1..=n {
        let next = lift_ksets(levels.last().expect("level"))?;
        examined += next.len() as u64;
        if examined > budget {
            return Err(Error::BudgetExceeded { what: "cycle recognition", budget });
        }
        if next.is_empty() {
            break;
        }
        let prev = levels.last().expect("level");
        let mut minus = Vec::with_capacity(size - 1);
        for a in next.iter() {
            let m = mask(a);
            if found.iter().any(|&c| c & m == c) {
                continue;
            }
            let all_connected = (0..size).all(|drop| {
                minus.clear();
                minus.extend(a.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x));
                prev.contains(&minus)
            });
            if all_connected {
                found.push(m);
                sets.push(a.to_vec());
            }
        }
        levels.push(next);
    }
    let entries = sets
        .into_iter()
        .map(|vertices| {
            let order = order_cycle(&vertices, &levels, kc).map(|o| canonical_cycle(&o));
            CatalogEntry { vertices, order }
        })
        .collect();
    Ok(CycleCatalog { entries, sets_examined: examined })
}

fn connected_in(levels: &[KSetCollection], k: usize, set: &mut Vec<Vertex>) -> bool {
    set.sort_unstable();
    set.len() >= k && levels.get(set.len() - k).is_some_and(|l| l.contains(set))
}

/// Walks a cycle given a symmetric adjacency test on its vertices.
fn walk(vertices: &[Vertex], adjacent: impl Fn(Vertex, Vertex) -> bool) -> Option<Vec<Vertex>> {
    let l = vertices.len();
    let nbrs: Vec<Vec<Vertex>> =
        vertices.iter().map(|&x| vertices.iter().copied().filter(|&y| y != x && adjacent(x, y)).collect()).collect();
    if nbrs.iter().any(|v| v.len() != 2) {
        return None;
    }
    let idx = |v: Vertex| vertices.iter().position(|&x| x == v).expect("member");
    let mut order = vec![vertices[0]];
    let mut prev = vertices[0];
    let mut cur = nbrs[0][0];
    while cur != vertices[0] {
        if order.len() > l {
            return None;
        }
        order.push(cur);
        let ns = &nbrs[idx(cur)];
        let nxt = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = nxt;
    }
    (order.len() == l).then_some(order)
}

fn order_cycle(c: &[Vertex], levels: &[KSetCollection], kc: &KSetCollection) -> Option<Vec<Vertex>> {
    let k = kc.k();
    let l = c.len();
    if l >= k + 2 {
        // Neighbours on the cycle: deleting both leaves a path.
        return walk(c, |x, y| {
            let mut rest: Vec<Vertex> = c.iter().copied().filter(|&z| z != x && z != y).collect();
            connected_in(levels, k, &mut rest)
        });
    }
    // Length k + 1: use an outside vertex with one neighbour on the cycle.
    for s in (0..kc.n() as Vertex).filter(|v| c.binary_search(v).is_err()) {
        let mut meet: Option<Vec<Vertex>> = None;
        for_each_subset(c, k - 1, |m| {
            let mut set: Vec<Vertex> = m.to_vec();
            set.push(s);
            set.sort_unstable();
            if kc.contains(&set) {
                meet = Some(match meet.take() {
                    None => m.to_vec(),
                    Some(prev) => prev.into_iter().filter(|x| m.contains(x)).collect(),
                });
            }
            true
        });
        let Some([v]) = meet.as_deref() else { continue };
        let v = *v;
        let path: Vec<Vertex> = c.iter().copied().filter(|&x| x != v).collect();
        let adjacent = |x: Vertex, y: Vertex| {
            let mut set: Vec<Vertex> = c.iter().copied().filter(|&z| z != x && z != y).collect();
            set.push(s);
            set.sort_unstable();
            kc.contains(&set)
        };
        let mut ends = Vec::new();
        let mut edges = 0;
        for (i, &x) in path.iter().enumerate() {
            let deg = path.iter().filter(|&&y| y != x && adjacent(x, y)).count();
            edges += path[i + 1..].iter().filter(|&&y| adjacent(x, y)).count();
            match deg {
                1 => ends.push(x),
                2 => {}
                _ => {
                    ends.clear();
                    break;
                }
            }
        }
        if ends.len() != 2 || edges != path.len() - 1 {
            continue;
        }
        return walk(c, |x, y| {
            if x == v || y == v {
                ends.contains(&(if x == v { y } else { x }))
            } else {
                adjacent(x, y)
            }
        });
    }
    None
}
