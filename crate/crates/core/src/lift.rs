//! Connectivity of sets larger than k, derived from the connected k-sets alone.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::kset::{for_each_subset, radix_sort_flat, KSetCollection};

/// Connected (k+1)-sets implied by the connected k-sets.
///
/// A (k+1)-set is connected iff two distinct one-vertex deletions of it are
/// connected k-sets. Candidates are `S ∪ {v}` for `S` in the collection.
pub fn lift_ksets(kc: &KSetCollection) -> Result<KSetCollection> {
    let (k, n) = (kc.k(), kc.n());
    if k + 1 > n {
        return Err(Error::KOutOfRange { k: k + 1, n, min: 2, max: n });
    }
    let mut out = Vec::new();
    let mut cand = Vec::with_capacity(k + 1);
    let mut minus = Vec::with_capacity(k);
    for s in kc.iter() {
        for v in 0..n as Vertex {
            if s.binary_search(&v).is_ok() {
                continue;
            }
            cand.clear();
            cand.extend_from_slice(s);
            let pos = cand.partition_point(|&x| x < v);
            cand.insert(pos, v);
            // Generate each candidate only from its lexicographically first
            // connected k-subset: deletions before `pos` come first.
            let mut hits = 0;
            let mut first_hit = None;
            for drop in 0..=k {
                minus.clear();
                minus.extend(cand.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x));
                if kc.contains(&minus) {
                    hits += 1;
                    // The deletion dropping the largest index yields the
                    // smallest subset, so the last hit is the first subset.
                    first_hit = Some(drop);
                }
            }
            if hits >= 2 && first_hit == Some(pos) {
                out.extend_from_slice(&cand);
            }
        }
    }
    radix_sort_flat(&mut out, k + 1, n);
    Ok(KSetCollection::from_sorted_flat(k + 1, kc.labels().clone(), out))
}

/// Default number of memoized answers before queries fail.
pub const DEFAULT_MEMO_BUDGET: u64 = 1 << 22;

/// Answers "is `G[S]` connected?" for any `|S| >= k` using only the k-sets.
///
/// For `|S| >= k`, `G[S]` is connected iff the connected k-subsets of `S`
/// cover `S` and overlap into one component: every edge of a connected
/// `G[S]` extends to a connected k-subset, and overlapping connected sets
/// have a connected union. Answers are memoized; the memo is bounded.
#[derive(Debug)]
pub struct ConnectivityOracle<'a> {
    kc: &'a KSetCollection,
    masks: Vec<u128>,
    memo: RwLock<HashMap<u128, bool>>,
    budget: u64,
    queries: AtomicU64,
}

pub(crate) fn mask_of(set: &[Vertex]) -> u128 {
    set.iter().fold(0u128, |m, &v| m | 1u128 << v)
}

pub(crate) fn members(mut mask: u128) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros());
        mask &= mask - 1;
    }
    out
}

impl<'a> ConnectivityOracle<'a> {
    pub const MAX_N: usize = 128;

    pub fn new(kc: &'a KSetCollection) -> Result<Self> {
        Self::with_budget(kc, DEFAULT_MEMO_BUDGET)
    }

    pub fn with_budget(kc: &'a KSetCollection, budget: u64) -> Result<Self> {
        if kc.n() > Self::MAX_N {
            return Err(Error::TooManyVertices { what: "connectivity oracle", max: Self::MAX_N, n: kc.n() });
        }
        let masks = kc.iter().map(mask_of).collect();
        Ok(Self { kc, masks, memo: RwLock::new(HashMap::new()), budget, queries: AtomicU64::new(0) })
    }

    pub fn k(&self) -> usize {
        self.kc.k()
    }

    pub fn n(&self) -> usize {
        self.kc.n()
    }

    pub fn collection(&self) -> &KSetCollection {
        self.kc
    }

    /// Number of distinct sets answered so far.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Connectivity of `G[S]` (any order, no repeats). Singletons are connected.
    pub fn query_connected(&self, set: &[Vertex]) -> Result<bool> {
        for &v in set {
            if v as usize >= self.n() {
                return Err(Error::VertexOutOfRange { index: v as usize, n: self.n() });
            }
        }
        self.query_mask(mask_of(set))
    }

    /// Connectivity of `G[S]` for `S` given as a bitmask.
    pub fn query_mask(&self, mask: u128) -> Result<bool> {
        let size = mask.count_ones() as usize;
        let k = self.k();
        if size == 1 {
            return Ok(true);
        }
        if size < k {
            return Err(Error::InvalidParameter(format!(
                "connectivity of a {size}-set is not determined by connected {k}-sets"
            )));
        }
        self.queries.fetch_add(1, Ordering::Relaxed);
        if size == k {
            return Ok(self.kc.contains(&members(mask)));
        }
        if let Some(&ans) = self.memo.read().expect("memo lock").get(&mask) {
            return Ok(ans);
        }
        let ans = self.compute(mask, size);
        let mut memo = self.memo.write().expect("memo lock");
        if memo.len() as u64 >= self.budget {
            return Err(Error::BudgetExceeded { what: "connectivity memo", budget: self.budget });
        }
        memo.insert(mask, ans);
        Ok(ans)
    }

    fn compute(&self, mask: u128, size: usize) -> bool {
        let k = self.k();
        let verts = members(mask);
        // Pick the cheaper of scanning the collection or probing subsets.
        let probes = binomial(size, k);
        let mut covered = 0u128;
        let mut uf = UnionFind::new(size);
        let pos = |v: Vertex| verts.binary_search(&v).expect("member");
        let mut absorb = |sub: &[Vertex], covered: &mut u128| {
            let a = pos(sub[0]);
            for &v in &sub[1..] {
                uf.union(a, pos(v));
            }
            *covered |= mask_of(sub);
        };
        if probes <= self.masks.len() as u128 {
            for_each_subset(&verts, k, |sub| {
                if self.kc.contains(sub) {
                    absorb(sub, &mut covered);
                }
                true
            });
        } else {
            for (i, &m) in self.masks.iter().enumerate() {
                if m & !mask == 0 {
                    absorb(self.kc.get(i), &mut covered);
                }
            }
        }
        covered == mask && uf.components() == 1
    }
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Plain union-find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    comps: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), comps: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.comps -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.comps
    }
}
