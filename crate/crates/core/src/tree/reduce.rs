//! The halving rounds: strip leaves, contract degree-two paths, rewrite the
//! triples, and record enough to glue everything back.

use crate::graph::{Graph, Vertex};
use crate::kset::radix_sort_flat;

use super::base::base_case_five;
use super::index::{leaf_neighbour, VertexTripleIndex};

/// One removal step, in original vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Leaf { leaf: Vertex, neighbour: Vertex },
    /// `path` was replaced by the edge `x1 x2`.
    Path { x1: Vertex, path: Vec<Vertex>, x2: Vertex },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionLog {
    pub records: Vec<Reduction>,
}

impl ReductionLog {
    /// Undoes the records, newest first, on the reduced tree `g`.
    pub fn replay(&self, g: &mut Graph) {
        for r in self.records.iter().rev() {
            match r {
                Reduction::Leaf { leaf, neighbour } => g.add_edge(*leaf, *neighbour),
                Reduction::Path { x1, path, x2 } => {
                    g.remove_edge(*x1, *x2);
                    let mut prev = *x1;
                    for &v in path.iter().chain(std::iter::once(x2)) {
                        g.add_edge(prev, v);
                        prev = v;
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundStats {
    pub before: usize,
    pub after: usize,
    pub leaves: usize,
    pub contracted: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub rounds: Vec<RoundStats>,
    /// Triple records read or written, over the whole run.
    pub touches: u64,
}

type Fail = String;

/// Reduces the tree on `0..n` with sorted flat triples `flat` to five
/// vertices and returns the base edges, in original ids.
pub(crate) fn reduce_to_base(
    n: usize,
    flat: &[Vertex],
    log: &mut ReductionLog,
    stats: &mut TreeStats,
) -> Result<Vec<(Vertex, Vertex)>, Fail> {
    let mut ids: Vec<Vertex> = (0..n as Vertex).collect();
    let mut flat = flat.to_vec();
    while ids.len() > 5 {
        let before = ids.len();
        let (next_ids, next_flat, leaves, contracted) = round(&ids, &flat, log, &mut stats.touches)?;
        if next_ids.len() == before {
            return Err(format!("no vertex could be removed from {before} remaining"));
        }
        stats.rounds.push(RoundStats { before, after: next_ids.len(), leaves, contracted });
        ids = next_ids;
        flat = next_flat;
    }
    let triples: Vec<[Vertex; 3]> = flat.chunks_exact(3).map(|t| [t[0], t[1], t[2]]).collect();
    stats.touches += triples.len() as u64;
    let local: Vec<Vertex> = (0..5).collect();
    let edges = base_case_five(&local, &triples)
        .ok_or_else(|| "triple counts on the last five vertices fit no tree".to_string())?;
    Ok(edges.into_iter().map(|(a, b)| (ids[a as usize], ids[b as usize])).collect())
}

/// Leaf neighbours of the current tree, by bulk domination.
fn leaves_of(index: &VertexTripleIndex, alive: &[bool], touches: &mut u64) -> Vec<Option<Vertex>> {
    let m = alive.len();
    let doms: Vec<Vec<Vertex>> = (0..m as Vertex)
        .map(|v| if alive[v as usize] { index.dominators(v, touches) } else { Vec::new() })
        .collect();
    let mut dominating = vec![false; m];
    for &d in doms.iter().flatten() {
        dominating[d as usize] = true;
    }
    (0..m as Vertex)
        .map(|v| {
            let d = &doms[v as usize];
            if d.is_empty() || dominating[v as usize] {
                None
            } else {
                leaf_neighbour(index, v, d)
            }
        })
        .collect()
}

/// Removes up to `room` of `candidates` (ascending), highest first.
fn capped(candidates: Vec<Vertex>, room: usize) -> Vec<Vertex> {
    let skip = candidates.len().saturating_sub(room);
    candidates[skip..].to_vec()
}

type RoundOut = (Vec<Vertex>, Vec<Vertex>, usize, usize);

fn round(ids: &[Vertex], flat: &[Vertex], log: &mut ReductionLog, touches: &mut u64) -> Result<RoundOut, Fail> {
    let m = ids.len();
    let g = |v: Vertex| ids[v as usize];
    let all = vec![true; m];

    // Classify on G.
    let index = VertexTripleIndex::build(flat, m, touches);
    let leaf = leaves_of(&index, &all, touches);
    let class2: Vec<bool> = (0..m as Vertex)
        .map(|v| leaf[v as usize].is_none() && index.covering_pair(v, touches).is_some())
        .collect();

    // Strip leaves.
    let leaves = capped((0..m as Vertex).filter(|&v| leaf[v as usize].is_some()).collect(), m - 5);
    let mut alive = all;
    for &v in &leaves {
        alive[v as usize] = false;
        log.records.push(Reduction::Leaf { leaf: g(v), neighbour: g(leaf[v as usize].expect("leaf")) });
    }
    let mut flat1 = Vec::with_capacity(flat.len());
    for t in flat.chunks_exact(3) {
        if t.iter().all(|&x| alive[x as usize]) {
            flat1.extend_from_slice(t);
        }
    }
    *touches += (flat.len() / 3) as u64;
    let m1 = m - leaves.len();
    let mut removed = vec![false; m];
    let mut contracted = 0;
    let mut rewritten = flat1.clone();

    if m1 > 5 {
        let index1 = VertexTripleIndex::build(&flat1, m, touches);
        let leaf1 = leaves_of(&index1, &alive, touches);
        let in_w: Vec<bool> = (0..m).map(|v| alive[v] && class2[v] && leaf1[v].is_none()).collect();

        // Both neighbours of each W vertex, from counts in its triples.
        let mut count = vec![0u32; m];
        let mut nbrs = vec![[0 as Vertex; 2]; m];
        for v in (0..m as Vertex).filter(|&v| in_w[v as usize]) {
            let tv = index1.triples_of(v);
            *touches += tv.len() as u64;
            for &x in tv.iter().flatten() {
                count[x as usize] += 1;
            }
            let mut seen: Vec<Vertex> = tv.iter().flatten().copied().collect();
            seen.sort_unstable();
            seen.dedup();
            let heavy: Vec<Vertex> = seen.iter().copied().filter(|&x| count[x as usize] >= 2).collect();
            let pair = match heavy[..] {
                [a, b] => Some([a, b]),
                [a] => {
                    let light: Vec<Vertex> = seen
                        .iter()
                        .copied()
                        .filter(|&x| count[x as usize] == 1 && index1.occurrences(x) == 1)
                        .collect();
                    match light[..] {
                        [u] => Some([a, u]),
                        _ => None,
                    }
                }
                _ => None,
            };
            for &x in &seen {
                count[x as usize] = 0;
            }
            nbrs[v as usize] = pair.ok_or_else(|| format!("cannot find the two neighbours of {}", g(v)))?;
        }

        // Path components of G'[W], contracted within the room left.
        let mut room = m1 - 5;
        let mut visited = vec![false; m];
        let mut ends = vec![[0 as Vertex; 2]; m];
        let w_nbrs = |v: Vertex| nbrs[v as usize].into_iter().filter(|&x| in_w[x as usize]);
        for start in 0..m as Vertex {
            if !in_w[start as usize] || visited[start as usize] || w_nbrs(start).count() > 1 {
                continue;
            }
            let mut path = vec![start];
            visited[start as usize] = true;
            let mut prev = None;
            let mut cur = start;
            while let Some(next) = w_nbrs(cur).find(|&x| Some(x) != prev) {
                if visited[next as usize] || !nbrs[next as usize].contains(&cur) {
                    return Err(format!("degree-two vertices around {} do not form a path", g(next)));
                }
                visited[next as usize] = true;
                path.push(next);
                prev = Some(cur);
                cur = next;
            }
            if room == 0 {
                continue;
            }
            let outside = |v: Vertex, inner: Option<Vertex>| nbrs[v as usize].into_iter().find(|&x| Some(x) != inner);
            let x1 = outside(start, path.get(1).copied()).expect("two neighbours");
            let take = path.len().min(room);
            let x2 = if take < path.len() {
                path[take]
            } else {
                let last = path.len() - 1;
                let inner = if last > 0 { Some(path[last - 1]) } else { Some(x1) };
                outside(path[last], inner).expect("two neighbours")
            };
            if x1 == x2 || in_w[x1 as usize] {
                return Err(format!("path through {} closes a cycle", g(start)));
            }
            path.truncate(take);
            room -= take;
            contracted += take;
            for &r in &path {
                removed[r as usize] = true;
                ends[r as usize] = [x1, x2];
            }
            log.records.push(Reduction::Path { x1: g(x1), path: path.iter().map(|&v| g(v)).collect(), x2: g(x2) });
        }
        if (0..m).any(|v| in_w[v] && !visited[v]) {
            return Err("degree-two vertices form a cycle".into());
        }

        // Rewrite each triple about its centre.
        rewritten.clear();
        let opposite = |r: Vertex, c: Vertex| -> Option<Vertex> {
            match ends[r as usize] {
                [a, b] if a == c => Some(b),
                [a, b] if b == c => Some(a),
                _ => None,
            }
        };
        for t in flat1.chunks_exact(3) {
            let Some(i) = t.iter().position(|&x| removed[x as usize]) else {
                rewritten.extend_from_slice(t);
                continue;
            };
            let r = t[i];
            let (p, q) = (t[(i + 1) % 3], t[(i + 2) % 3]);
            let near = nbrs[r as usize];
            let (c, other) = match (near.contains(&p), near.contains(&q)) {
                (true, true) => continue,
                (true, false) => (p, q),
                (false, true) => (q, p),
                (false, false) => return Err(format!("triple around {} is not a path", g(r))),
            };
            if removed[c as usize] {
                continue;
            }
            let phi = |x: Vertex| if removed[x as usize] { opposite(x, c) } else { Some(x) };
            let (Some(a), Some(b)) = (phi(r), phi(other)) else {
                return Err(format!("triple around {} does not match its contraction", g(r)));
            };
            if a == c || b == c || a == b {
                return Err(format!("contraction through {} merges vertices", g(r)));
            }
            let mut nt = [c, a, b];
            nt.sort_unstable();
            rewritten.extend_from_slice(&nt);
        }
        *touches += (flat1.len() / 3) as u64;

        // Class-(ii) vertices that became leaves go too.
        let m2 = m1 - contracted;
        let late = capped((0..m as Vertex).filter(|&v| alive[v as usize] && class2[v as usize] && leaf1[v as usize].is_some()).collect(), m2 - 5);
        for &v in &late {
            let u = leaf1[v as usize].expect("leaf");
            let neighbour = if removed[u as usize] {
                opposite(u, v).ok_or_else(|| format!("leaf {} lost its neighbour", g(v)))?
            } else {
                u
            };
            if removed[neighbour as usize] {
                return Err(format!("leaf {} lost its neighbour", g(v)));
            }
            removed[v as usize] = true;
            log.records.push(Reduction::Leaf { leaf: g(v), neighbour: g(neighbour) });
        }
    }

    // Compact the survivors and resort.
    let mut local = vec![Vertex::MAX; m];
    let mut next_ids = Vec::new();
    for v in 0..m {
        if alive[v] && !removed[v] {
            local[v] = next_ids.len() as Vertex;
            next_ids.push(ids[v]);
        }
    }
    let mut next_flat = Vec::with_capacity(rewritten.len());
    for t in rewritten.chunks_exact(3) {
        if t.iter().all(|&x| local[x as usize] != Vertex::MAX) {
            next_flat.extend(t.iter().map(|&x| local[x as usize]));
        }
    }
    *touches += (rewritten.len() / 3) as u64;
    let st = radix_sort_flat(&mut next_flat, 3, next_ids.len().max(1));
    *touches += st.element_moves as u64;
    let mut dedup: Vec<Vertex> = Vec::with_capacity(next_flat.len());
    for t in next_flat.chunks_exact(3) {
        if dedup.len() < 3 || dedup[dedup.len() - 3..] != *t {
            dedup.extend_from_slice(t);
        }
    }
    let removed_leaves = leaves.len() + (m1 - contracted - next_ids.len());
    Ok((next_ids, dedup, removed_leaves, contracted))
}
