//! Per-vertex triple lists, domination and the leaf / degree-two tests.

use crate::graph::Vertex;
use crate::kset::radix_sort_flat;

/// `T_v` for every vertex: the other two members of each triple with `v`,
/// sorted. Built from the three rotations of every triple by radix sort.
#[derive(Clone, Debug)]
pub struct VertexTripleIndex {
    offsets: Vec<usize>,
    pairs: Vec<[Vertex; 2]>,
}

impl VertexTripleIndex {
    /// `flat` holds sorted triples over `0..n`. `touches` counts records handled.
    pub fn build(flat: &[Vertex], n: usize, touches: &mut u64) -> Self {
        let mut rot = Vec::with_capacity(flat.len() * 3);
        for t in flat.chunks_exact(3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            rot.extend_from_slice(&[a, b, c, b, a, c, c, a, b]);
        }
        let stats = radix_sort_flat(&mut rot, 3, n);
        *touches += stats.element_moves as u64;
        let mut offsets = vec![0usize; n + 1];
        let mut pairs = Vec::with_capacity(rot.len() / 3);
        for r in rot.chunks_exact(3) {
            offsets[r[0] as usize + 1] += 1;
            pairs.push([r[1], r[2]]);
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        *touches += pairs.len() as u64;
        Self { offsets, pairs }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Other two members of each triple containing `v`.
    pub fn triples_of(&self, v: Vertex) -> &[[Vertex; 2]] {
        &self.pairs[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn occurrences(&self, v: Vertex) -> usize {
        self.triples_of(v).len()
    }

    /// Every triple containing `u` also contains `v`.
    pub fn dominates(&self, v: Vertex, u: Vertex) -> bool {
        let tu = self.triples_of(u);
        !tu.is_empty() && v != u && tu.iter().all(|p| p.contains(&v))
    }

    /// Vertices dominating `u` (at most two: both lie in its first triple).
    pub fn dominators(&self, u: Vertex, touches: &mut u64) -> Vec<Vertex> {
        let tu = self.triples_of(u);
        let Some(first) = tu.first() else {
            return Vec::new();
        };
        *touches += 2 * tu.len() as u64;
        first.iter().copied().filter(|&w| tu.iter().all(|p| p.contains(&w))).collect()
    }

    /// Some `(w1, w2)` such that every triple with `v` contains `w1` or `w2`.
    /// `w2` is `None` when the triples avoiding `w1` run out.
    ///
    /// `w1` is tried from the first triple and `w2` from the first triple
    /// avoiding `w1` (four options). Among valid options the pair occurring
    /// most often in `T_v` wins, which picks the two neighbours when `v` has
    /// degree two.
    pub fn covering_pair(&self, v: Vertex, touches: &mut u64) -> Option<(Vertex, Option<Vertex>)> {
        let tv = self.triples_of(v);
        let first = tv.first()?;
        let count = |w: Vertex| tv.iter().filter(|p| p.contains(&w)).count();
        let mut best: Option<((Vertex, Option<Vertex>), usize)> = None;
        for &w1 in first {
            *touches += tv.len() as u64;
            let mut rest = tv.iter().filter(|p| !p.contains(&w1));
            let options: Vec<Option<Vertex>> = match rest.next() {
                None => vec![None],
                Some(second) => second.iter().map(|&w| Some(w)).collect(),
            };
            for w2 in options {
                *touches += 2 * tv.len() as u64;
                let ok = match w2 {
                    None => true,
                    Some(w2) => tv.iter().all(|p| p.contains(&w1) || p.contains(&w2)),
                };
                if ok {
                    let score = count(w1) + w2.map_or(0, count);
                    if best.is_none_or(|(_, s)| score > s) {
                        best = Some(((w1, w2), score));
                    }
                }
            }
        }
        best.map(|(pair, _)| pair)
    }
}

/// Outcome of the per-vertex tests on a tree with at least five vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    /// Dominated and dominating nobody; `neighbour` is its unique neighbour.
    Leaf { neighbour: Vertex },
    /// Degree two, or degree three with a leaf neighbour.
    DegreeTwoOrDeg3WithLeaf { w1: Vertex, w2: Option<Vertex> },
    Other,
}

/// Leaf neighbour from the dominators of `v`: a single dominator, or, when
/// `T_v` is one triple `{v, w, w'}`, whichever of `w, w'` the other dominates.
pub(crate) fn leaf_neighbour(index: &VertexTripleIndex, v: Vertex, doms: &[Vertex]) -> Option<Vertex> {
    match doms {
        [w] => Some(*w),
        [w, x] if index.occurrences(v) == 1 => {
            match (index.dominates(*x, *w), index.dominates(*w, *x)) {
                (true, false) => Some(*w),
                (false, true) => Some(*x),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Classifies one vertex. Checking "dominates nobody" looks at the vertices
/// sharing a triple with `v`, the only ones it could dominate.
pub fn classify_vertex(index: &VertexTripleIndex, v: Vertex) -> VertexClass {
    let mut touches = 0;
    let doms = index.dominators(v, &mut touches);
    if !doms.is_empty() {
        let dominates_someone = index
            .triples_of(v)
            .iter()
            .flatten()
            .any(|&u| index.dominates(v, u));
        if !dominates_someone {
            if let Some(neighbour) = leaf_neighbour(index, v, &doms) {
                return VertexClass::Leaf { neighbour };
            }
        }
    }
    match index.covering_pair(v, &mut touches) {
        Some((w1, w2)) => VertexClass::DegreeTwoOrDeg3WithLeaf { w1, w2 },
        None => VertexClass::Other,
    }
}
