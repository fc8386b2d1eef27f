//! Sorted rotation list and occurrence profiles.

use crate::graph::Vertex;
use crate::kset::{radix_sort_flat, KSetCollection};

/// Each triple `abc` stored as `abc`, `acb` and `bca`, sorted, so the triples
/// holding a pair `(x, y)` with `x < y` sit in one run headed by it.
#[derive(Clone, Debug)]
pub struct OrderedTripleList {
    rows: Vec<[Vertex; 3]>,
}

impl OrderedTripleList {
    pub fn new(t: &KSetCollection) -> Self {
        let mut flat = Vec::with_capacity(t.flat().len() * 3);
        for s in t.iter() {
            let (a, b, c) = (s[0], s[1], s[2]);
            flat.extend_from_slice(&[a, b, c, a, c, b, b, c, a]);
        }
        radix_sort_flat(&mut flat, 3, t.n().max(1));
        Self { rows: flat.chunks_exact(3).map(|r| [r[0], r[1], r[2]]).collect() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[[Vertex; 3]] {
        &self.rows
    }

    /// Third members of the triples holding `x` and `y`, by binary search.
    pub fn tails(&self, x: Vertex, y: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let (x, y) = (x.min(y), x.max(y));
        let lo = self.rows.partition_point(|r| (r[0], r[1]) < (x, y));
        let hi = lo + self.rows[lo..].partition_point(|r| (r[0], r[1]) == (x, y));
        self.rows[lo..hi].iter().map(|r| r[2])
    }

    /// Distinct head pairs in list order.
    pub fn heads(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let mut last = None;
        self.rows.iter().filter_map(move |r| {
            let h = (r[0], r[1]);
            (last.replace(h) != Some(h)).then_some(h)
        })
    }
}

/// Number of triples holding each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceProfile {
    pub occ: Vec<usize>,
}

impl OccurrenceProfile {
    pub fn of(t: &KSetCollection) -> Self {
        Self { occ: t.occurrences() }
    }

    pub fn from_triples(n: usize, triples: &[[Vertex; 3]]) -> Self {
        let mut occ = vec![0; n];
        for t in triples {
            for &v in t {
                occ[v as usize] += 1;
            }
        }
        Self { occ }
    }

    /// The multiset, ascending.
    pub fn sorted(&self) -> Vec<usize> {
        let mut s = self.occ.clone();
        s.sort_unstable();
        s
    }
}
