//! Connected k-sets: canonical storage, extraction from graphs, radix sorting
//! and the membership index.

use std::collections::HashSet;
use std::hash::{BuildHasher, Hasher};

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{words_for, Graph, Labels, Vertex};

/// A set of distinct vertex indices stored in strictly increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSet(Vec<Vertex>);

impl KSet {
    /// Canonicalizes `vertices` (sorts them); fails on repeats.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("repeated vertex in set {vertices:?}")));
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// How repeated sets in the input are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    #[default]
    Strict,
    Lenient,
}

/// Work done by one radix sort.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortStats {
    pub passes: usize,
    pub element_moves: usize,
}

/// LSD radix sort of `t` fixed-width tuples stored flat in `data`.
///
/// Stable; duplicates are preserved. Each pass is a counting sort on one
/// coordinate with `base` buckets.
pub fn radix_sort_flat(data: &mut Vec<Vertex>, width: usize, base: usize) -> SortStats {
    let mut stats = SortStats::default();
    if width == 0 || data.is_empty() {
        return stats;
    }
    debug_assert_eq!(data.len() % width, 0);
    let t = data.len() / width;
    let mut scratch = vec![0 as Vertex; data.len()];
    let mut counts = vec![0usize; base + 1];
    for pos in (0..width).rev() {
        counts.iter_mut().for_each(|c| *c = 0);
        for i in 0..t {
            counts[data[i * width + pos] as usize + 1] += 1;
        }
        for b in 0..base {
            counts[b + 1] += counts[b];
        }
        for i in 0..t {
            let key = data[i * width + pos] as usize;
            let dst = counts[key];
            counts[key] += 1;
            scratch[dst * width..(dst + 1) * width].copy_from_slice(&data[i * width..(i + 1) * width]);
        }
        std::mem::swap(data, &mut scratch);
        stats.passes += 1;
        stats.element_moves += t;
    }
    stats
}

/// Sorts k-sets lexicographically. All sets must have the same size and
/// indices below `n`.
pub fn sort_ksets(sets: Vec<KSet>, n: usize) -> (Vec<KSet>, SortStats) {
    let Some(width) = sets.first().map(KSet::len) else {
        return (sets, SortStats::default());
    };
    assert!(sets.iter().all(|s| s.len() == width), "sets of mixed size");
    let mut flat: Vec<Vertex> = sets.into_iter().flat_map(|s| s.0).collect();
    let stats = radix_sort_flat(&mut flat, width, n);
    let out = flat.chunks(width).map(|c| KSet(c.to_vec())).collect();
    (out, stats)
}

/// Which membership structure backs `contains` lookups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IndexKind {
    /// Binary search over the sorted list, `O(k log t)`.
    #[default]
    Sorted,
    /// Seeded hash set over packed tuples, expected `O(k)`.
    Hashed { seed: u64 },
}

#[derive(Clone, Copy, Debug)]
struct SeededState(u64);

impl BuildHasher for SeededState {
    type Hasher = PackedHasher;
    fn build_hasher(&self) -> PackedHasher {
        PackedHasher(self.0)
    }
}

/// Multiply-xorshift hasher for packed `u128` keys.
#[derive(Clone, Copy, Debug)]
struct PackedHasher(u64);

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Hasher for PackedHasher {
    fn finish(&self) -> u64 {
        mix(self.0)
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = mix(self.0 ^ b as u64);
        }
    }
    fn write_u128(&mut self, v: u128) {
        self.0 = mix(self.0 ^ v as u64) ^ mix((v >> 64) as u64 ^ 0x9e37_79b9_7f4a_7c15);
    }
}

#[derive(Clone, Debug)]
enum Index {
    Sorted,
    Hashed { bits: u32, set: HashSet<u128, SeededState> },
}

/// The input indeterminacy: every k-subset of the universe that induces a
/// connected subgraph, sorted lexicographically without repeats.
#[derive(Clone, Debug)]
pub struct KSetCollection {
    k: usize,
    labels: Labels,
    data: Vec<Vertex>,
    index: Index,
}

impl PartialEq for KSetCollection {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.labels == other.labels && self.data == other.data
    }
}

impl Eq for KSetCollection {}

impl KSetCollection {
    /// Builds a collection from arbitrary (unsorted, possibly repeated) sets.
    pub fn from_sets(
        k: usize,
        labels: Labels,
        sets: Vec<Vec<Vertex>>,
        policy: DuplicatePolicy,
    ) -> Result<Self> {
        let n = labels.len();
        if k < 2 {
            return Err(Error::KOutOfRange { k, n, min: 2, max: n });
        }
        let mut flat = Vec::with_capacity(sets.len() * k);
        for set in sets {
            if set.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "set {set:?} has {} elements, expected {k}",
                    set.len()
                )));
            }
            if let Some(&v) = set.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { index: v as usize, n });
            }
            flat.extend(KSet::new(set)?.0);
        }
        radix_sort_flat(&mut flat, k, n);
        let mut out: Vec<Vertex> = Vec::with_capacity(flat.len());
        let mut dups = 0usize;
        for chunk in flat.chunks(k) {
            if out.len() >= k && &out[out.len() - k..] == chunk {
                if policy == DuplicatePolicy::Strict {
                    let names = chunk.iter().map(|&v| labels.name(v).to_string()).collect();
                    return Err(Error::DuplicateSet(names));
                }
                dups += 1;
                continue;
            }
            out.extend_from_slice(chunk);
        }
        if dups > 0 {
            warn!("dropped {dups} duplicate set(s)");
        }
        Ok(Self { k, labels, data: out, index: Index::Sorted })
    }

    /// Wraps an already sorted, duplicate-free flat list.
    pub(crate) fn from_sorted_flat(k: usize, labels: Labels, data: Vec<Vertex>) -> Self {
        debug_assert!(data.chunks(k).zip(data.chunks(k).skip(1)).all(|(a, b)| a < b));
        Self { k, labels, data, index: Index::Sorted }
    }

    /// Same sets, new membership structure.
    pub fn with_index(mut self, kind: IndexKind) -> Self {
        self.index = match kind {
            IndexKind::Sorted => Index::Sorted,
            IndexKind::Hashed { seed } => {
                let bits = usize::BITS - self.n().max(2).saturating_sub(1).leading_zeros();
                if bits as usize * self.k > 128 {
                    warn!("tuples too wide to pack; falling back to sorted index");
                    Index::Sorted
                } else {
                    let mut set = HashSet::with_capacity_and_hasher(self.len(), SeededState(seed));
                    for s in self.iter() {
                        set.insert(pack(s, bits));
                    }
                    Index::Hashed { bits, set }
                }
            }
        };
        self
    }

    pub fn index_kind(&self) -> &'static str {
        match self.index {
            Index::Sorted => "sorted",
            Index::Hashed { .. } => "hashed",
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Vertex] {
        &self.data[i * self.k..(i + 1) * self.k]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.data.chunks_exact(self.k)
    }

    pub fn flat(&self) -> &[Vertex] {
        &self.data
    }

    /// Membership of a set given in strictly increasing order.
    pub fn contains(&self, sorted: &[Vertex]) -> bool {
        if sorted.len() != self.k {
            return false;
        }
        match &self.index {
            Index::Sorted => self.position(sorted).is_some(),
            Index::Hashed { bits, set } => {
                if sorted.iter().any(|&v| v as usize >= self.n()) {
                    return false;
                }
                set.contains(&pack(sorted, *bits))
            }
        }
    }

    /// Membership of a set in any order.
    pub fn contains_unsorted(&self, set: &[Vertex]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.contains(&s)
    }

    fn position(&self, sorted: &[Vertex]) -> Option<usize> {
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(sorted) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Sets as owned `KSet`s.
    pub fn to_ksets(&self) -> Vec<KSet> {
        self.iter().map(|s| KSet(s.to_vec())).collect()
    }

    /// Sets as label tuples, in canonical order.
    pub fn label_sets(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|s| s.iter().map(|&v| self.labels.name(v).to_string()).collect())
            .collect()
    }

    /// Number of sets containing each vertex.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.n()];
        for &v in &self.data {
            occ[v as usize] += 1;
        }
        occ
    }

    /// Sets lying entirely inside `keep` (a sorted vertex list), same universe.
    pub fn restricted_to(&self, keep: &[Vertex]) -> KSetCollection {
        let mut inside = vec![false; self.n()];
        for &v in keep {
            inside[v as usize] = true;
        }
        let data = self
            .iter()
            .filter(|s| s.iter().all(|&v| inside[v as usize]))
            .flatten()
            .copied()
            .collect();
        Self::from_sorted_flat(self.k, self.labels.clone(), data)
    }
}

fn pack(sorted: &[Vertex], bits: u32) -> u128 {
    sorted.iter().fold(0u128, |acc, &v| (acc << bits) | v as u128)
}

/// All connected k-sets of `g`, sorted, with the universe of `g`.
pub fn extract_ksets(g: &Graph, k: usize) -> Result<KSetCollection> {
    let n = g.n();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n, min: 2, max: n });
    }
    let mut flat = Vec::new();
    enumerate_connected(g, k, |s| flat.extend_from_slice(s));
    radix_sort_flat(&mut flat, k, n);
    Ok(KSetCollection::from_sorted_flat(k, g.labels().clone(), flat))
}

/// Calls `emit` once per connected induced k-vertex subgraph (vertices sorted).
///
/// Exclusive-neighbourhood extension: every connected set is generated exactly
/// once from its minimum vertex.
pub fn enumerate_connected(g: &Graph, k: usize, mut emit: impl FnMut(&[Vertex])) {
    let n = g.n();
    let words = words_for(n).max(1);
    let mut sub = Vec::with_capacity(k);
    let mut sorted = Vec::with_capacity(k);
    for v in 0..n as Vertex {
        let mut ext = vec![0u64; words];
        let mut closed = vec![0u64; words];
        set_bit(&mut closed, v);
        for w in g.neighbors(v) {
            set_bit(&mut closed, w);
            if w > v {
                set_bit(&mut ext, w);
            }
        }
        sub.clear();
        sub.push(v);
        extend(g, k, v, &mut sub, ext, &closed, &mut sorted, &mut emit);
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    k: usize,
    root: Vertex,
    sub: &mut Vec<Vertex>,
    mut ext: Vec<u64>,
    closed: &[u64],
    sorted: &mut Vec<Vertex>,
    emit: &mut impl FnMut(&[Vertex]),
) {
    if sub.len() == k {
        sorted.clear();
        sorted.extend_from_slice(sub);
        sorted.sort_unstable();
        emit(sorted);
        return;
    }
    while let Some(w) = pop_bit(&mut ext) {
        let mut next_ext = ext.clone();
        let mut next_closed = closed.to_vec();
        for u in g.neighbors(w) {
            if u > root && !get_bit(closed, u) {
                set_bit(&mut next_ext, u);
            }
            set_bit(&mut next_closed, u);
        }
        sub.push(w);
        extend(g, k, root, sub, next_ext, &next_closed, sorted, emit);
        sub.pop();
    }
}

fn set_bit(bits: &mut [u64], v: Vertex) {
    bits[v as usize / 64] |= 1 << (v % 64);
}

fn get_bit(bits: &[u64], v: Vertex) -> bool {
    bits[v as usize / 64] >> (v % 64) & 1 == 1
}

fn pop_bit(bits: &mut [u64]) -> Option<Vertex> {
    for (i, w) in bits.iter_mut().enumerate() {
        if *w != 0 {
            let b = w.trailing_zeros();
            *w &= *w - 1;
            return Some((i * 64) as Vertex + b);
        }
    }
    None
}

/// Iterates over all `r`-subsets of `items` in lexicographic order of positions.
pub fn for_each_subset<T: Copy>(items: &[T], r: usize, mut f: impl FnMut(&[T]) -> bool) {
    if r > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<T> = Vec::with_capacity(r);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        if !f(&buf) {
            return;
        }
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + items.len() - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        if idx[i] == i + items.len() - r {
            return;
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labelled(names: &[&str], edges: &[(&str, &str)]) -> Graph {
        Graph::labelled(names, edges).unwrap()
    }

    #[test]
    fn path_triples() {
        let g = labelled(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        );
        let t = extract_ksets(&g, 3).unwrap();
        assert_eq!(t.label_sets(), vec![vec!["a", "b", "c"], vec!["b", "c", "d"], vec!["c", "d", "e"]]);
    }

    #[test]
    fn star_triples_are_all_but_leaf_triple() {
        let g = labelled(&["a", "b", "c", "d"], &[("a", "d"), ("b", "d"), ("c", "d")]);
        let t = extract_ksets(&g, 3).unwrap();
        assert_eq!(t.label_sets(), vec![vec!["a", "b", "d"], vec!["a", "c", "d"], vec!["b", "c", "d"]]);
    }

    #[test]
    fn triangle_has_one_triple() {
        let g = labelled(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(extract_ksets(&g, 3).unwrap().len(), 1);
    }

    #[test]
    fn k_out_of_range() {
        let g = Graph::empty(3);
        assert!(matches!(extract_ksets(&g, 4), Err(Error::KOutOfRange { .. })));
        assert!(matches!(extract_ksets(&g, 1), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn k2_is_edge_relation() {
        let g = Graph::with_edges(4, &[(0, 1), (2, 3), (1, 3)]);
        let t = extract_ksets(&g, 2).unwrap();
        let pairs: Vec<(u32, u32)> = t.iter().map(|s| (s[0], s[1])).collect();
        assert_eq!(pairs, g.edges());
    }

    #[test]
    fn extraction_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(3..=9);
            let mut g = Graph::empty(n);
            for u in 0..n as Vertex {
                for v in u + 1..n as Vertex {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            for k in 2..=n.min(5) {
                let fast = extract_ksets(&g, k).unwrap();
                let all: Vec<Vertex> = (0..n as Vertex).collect();
                let mut brute = Vec::new();
                for_each_subset(&all, k, |s| {
                    if g.is_connected_subset(s).unwrap() {
                        brute.extend_from_slice(s);
                    }
                    true
                });
                assert_eq!(fast.flat(), &brute[..], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn sort_small_examples() {
        let sets = vec![
            KSet::new(vec![1, 2, 3]).unwrap(),
            KSet::new(vec![0, 1, 2]).unwrap(),
            KSet::new(vec![0, 1, 3]).unwrap(),
        ];
        let (sorted, stats) = sort_ksets(sets.clone(), 4);
        assert_eq!(sorted, vec![sets[1].clone(), sets[2].clone(), sets[0].clone()]);
        assert_eq!(stats.passes, 3);
        let (again, _) = sort_ksets(sorted.clone(), 4);
        assert_eq!(again, sorted);
    }

    #[test]
    fn radix_matches_comparison_sort_on_large_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1000;
        let sets: Vec<KSet> = (0..100_000)
            .map(|_| loop {
                let v = vec![rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                if let Ok(s) = KSet::new(v) {
                    break s;
                }
            })
            .collect();
        let mut expected = sets.clone();
        expected.sort();
        let (sorted, stats) = sort_ksets(sets, n as usize);
        assert_eq!(sorted, expected);
        assert_eq!(stats.passes, 3);
        assert_eq!(stats.element_moves, 3 * 100_000);
    }

    #[test]
    fn strict_rejects_duplicates_lenient_drops_them() {
        let labels = Labels::numbered(4);
        let sets = vec![vec![0, 1, 2], vec![2, 1, 0]];
        assert!(matches!(
            KSetCollection::from_sets(3, labels.clone(), sets.clone(), DuplicatePolicy::Strict),
            Err(Error::DuplicateSet(_))
        ));
        let c = KSetCollection::from_sets(3, labels, sets, DuplicatePolicy::Lenient).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn hashed_and_sorted_index_agree() {
        let g = Graph::with_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)]);
        let t = extract_ksets(&g, 3).unwrap();
        let h = t.clone().with_index(IndexKind::Hashed { seed: 9 });
        assert_eq!(h.index_kind(), "hashed");
        let all: Vec<Vertex> = (0..7).collect();
        for_each_subset(&all, 3, |s| {
            assert_eq!(t.contains(s), h.contains(s));
            assert_eq!(t.contains(s), g.is_connected_subset(s).unwrap());
            true
        });
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        let mut count = 0;
        for_each_subset(&[1, 2, 3], 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
