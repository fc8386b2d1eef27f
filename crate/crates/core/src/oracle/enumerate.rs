//! Exhaustive enumeration of all graphs with a given k-set collection.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use super::predicates;
use crate::error::{Error, Result};
use crate::graph::{Graph, Labels, Vertex};
use crate::kset::KSetCollection;

/// Graph class tested on each consistent graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassPredicate {
    Connected,
    Tree,
    TriangleFree,
    Outerplanar,
    Outerplanar2Connected,
    MaximalPlanar,
    GirthGreaterThan(usize),
    RandomLike,
}

impl ClassPredicate {
    pub fn holds(self, g: &Graph) -> Result<bool> {
        Ok(match self {
            Self::Connected => g.is_connected(),
            Self::Tree => predicates::is_tree(g),
            Self::TriangleFree => predicates::is_triangle_free(g),
            Self::Outerplanar => predicates::is_outerplanar(g)?,
            Self::Outerplanar2Connected => predicates::is_outerplanar_2connected(g)?,
            Self::MaximalPlanar => predicates::is_maximal_planar(g)?,
            Self::GirthGreaterThan(k) => predicates::girth(g).is_none_or(|x| x > k),
            Self::RandomLike => crate::ksets::is_random_like(g).holds(),
        })
    }
}

impl fmt::Display for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Connected => f.write_str("connected"),
            Self::Tree => f.write_str("tree"),
            Self::TriangleFree => f.write_str("triangle-free"),
            Self::Outerplanar => f.write_str("outerplanar"),
            Self::Outerplanar2Connected => f.write_str("outerplanar2c"),
            Self::MaximalPlanar => f.write_str("max-planar"),
            Self::GirthGreaterThan(k) => write!(f, "girth-gt-{k}"),
            Self::RandomLike => f.write_str("random-like"),
        }
    }
}

impl FromStr for ClassPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "connected" => Self::Connected,
            "tree" => Self::Tree,
            "triangle-free" => Self::TriangleFree,
            "outerplanar" => Self::Outerplanar,
            "outerplanar2c" => Self::Outerplanar2Connected,
            "max-planar" => Self::MaximalPlanar,
            "random-like" => Self::RandomLike,
            other => match other.strip_prefix("girth-gt-").and_then(|k| k.parse().ok()) {
                Some(k) => Self::GirthGreaterThan(k),
                None => return Err(Error::InvalidParameter(format!("unknown class filter `{s}`"))),
            },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Largest universe accepted; `None` picks 8 for k = 3 and 7 otherwise.
    pub max_n: Option<usize>,
    /// Search nodes visited before the report is marked partial.
    pub node_budget: u64,
    pub witness_cap: usize,
    pub jobs: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { max_n: None, node_budget: 50_000_000, witness_cap: 64, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Consistent graphs passing every filter.
    pub count: u64,
    /// Consistent graphs, unfiltered.
    pub total: u64,
    /// Per-filter counts, in filter order.
    pub class_counts: Vec<(ClassPredicate, u64)>,
    /// Filtered witnesses in ascending edge-bitmask order, up to the cap.
    pub witnesses: Vec<Graph>,
    /// False when the node budget ran out; counts are then lower bounds.
    pub complete: bool,
}

impl OracleReport {
    /// Count line, then one witness per line as comma-separated edges.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.complete {
            let _ = writeln!(out, "count {}", self.count);
        } else {
            let _ = writeln!(out, "count >= {} (budget exhausted, partial)", self.count);
        }
        for (c, n) in &self.class_counts {
            let _ = writeln!(out, "# {c}: {n}");
        }
        for w in &self.witnesses {
            let edges: Vec<String> = w.edge_labels().into_iter().map(|(u, v)| format!("{u} {v}")).collect();
            let _ = writeln!(out, "witness: {}", edges.join(", "));
        }
        out
    }
}

struct Problem<'a> {
    n: usize,
    labels: &'a Labels,
    pairs: Vec<(Vertex, Vertex)>,
    forced_off: Vec<bool>,
    /// Sets whose smallest pair is `p`, with their expected connectivity.
    checks: Vec<Vec<(u64, bool)>>,
    filters: &'a [ClassPredicate],
    caps: OracleCaps,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

#[derive(Default)]
struct Tally {
    count: u64,
    total: u64,
    class_counts: Vec<u64>,
    witnesses: Vec<Graph>,
    error: Option<String>,
}

fn connected(set: u64, rows: &[u64]) -> bool {
    let mut reach = 1u64 << set.trailing_zeros();
    loop {
        let mut next = reach;
        let mut bits = reach;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= rows[v] & set;
        }
        if next == reach {
            return reach == set;
        }
        reach = next;
    }
}

impl Problem<'_> {
    fn assign(&self, p: usize, on: bool, rows: &mut [u64]) -> bool {
        let (u, v) = self.pairs[p];
        if on {
            rows[u as usize] |= 1 << v;
            rows[v as usize] |= 1 << u;
        } else {
            rows[u as usize] &= !(1 << v);
            rows[v as usize] &= !(1 << u);
        }
        self.checks[p].iter().all(|&(s, want)| connected(s, rows) == want)
    }

    /// Decides pairs `p, p-1, ..., 0`, zero before one.
    fn dfs(&self, p: usize, rows: &mut [u64], tally: &mut Tally) -> bool {
        if p == 0 {
            self.leaf(rows, tally);
            return true;
        }
        let p = p - 1;
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.caps.node_budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        for on in [false, true] {
            if on && self.forced_off[p] {
                continue;
            }
            if self.assign(p, on, rows) && !self.dfs(p, rows, tally) {
                self.assign(p, false, rows);
                return false;
            }
        }
        self.assign(p, false, rows);
        true
    }

    fn leaf(&self, rows: &[u64], tally: &mut Tally) {
        let mut g = Graph::new(self.labels.clone());
        for (u, &row) in rows.iter().enumerate() {
            let mut bits = row >> u >> 1;
            while bits != 0 {
                let v = u + 1 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                g.add_edge(u as Vertex, v as Vertex);
            }
        }
        tally.total += 1;
        let mut all = true;
        for (i, f) in self.filters.iter().enumerate() {
            match f.holds(&g) {
                Ok(true) => tally.class_counts[i] += 1,
                Ok(false) => all = false,
                Err(e) => {
                    tally.error.get_or_insert(e.to_string());
                    all = false;
                }
            }
        }
        if all {
            tally.count += 1;
            if tally.witnesses.len() < self.caps.witness_cap {
                tally.witnesses.push(g);
            }
        }
    }
}

/// Every graph on the universe of `kc` whose connected k-sets are exactly
/// `kc`, with optional class filters.
pub fn enumerate_consistent(kc: &KSetCollection, filters: &[ClassPredicate], caps: OracleCaps) -> Result<OracleReport> {
    let (n, k) = (kc.n(), kc.k());
    let max_n = caps.max_n.unwrap_or(if k == 3 { 8 } else { 7 }).min(64);
    if n > max_n {
        return Err(Error::TooManyVertices { what: "enumeration oracle", max: max_n, n });
    }
    let mut pairs = Vec::new();
    for i in 0..n as Vertex {
        for j in i + 1..n as Vertex {
            pairs.push((i, j));
        }
    }
    let pair_id = |i: Vertex, j: Vertex| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let mut checks = vec![Vec::new(); pairs.len()];
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    crate::kset::for_each_subset(&all, k, |s| {
        let mask = s.iter().fold(0u64, |m, &v| m | 1 << v);
        checks[pair_id(s[0], s[1])].push((mask, kc.contains(s)));
        true
    });
    // For k = 3 a pair with a covered endpoint that co-occurs in no triple
    // cannot be an edge.
    let mut forced_off = vec![false; pairs.len()];
    if k == 3 {
        let occ = kc.occurrences();
        let mut together = vec![false; n * n];
        for s in kc.iter() {
            for (a, b) in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
                together[a as usize * n + b as usize] = true;
            }
        }
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let covered = occ[i as usize] > 0 || occ[j as usize] > 0;
            forced_off[p] = covered && !together[i as usize * n + j as usize];
        }
    }
    let prob = Problem {
        n,
        labels: kc.labels(),
        pairs,
        forced_off,
        checks,
        filters,
        caps,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let tally = run(&prob);
    if let Some(e) = tally.error {
        return Err(Error::InvalidParameter(format!("class filter failed: {e}")));
    }
    let report = OracleReport {
        count: tally.count,
        total: tally.total,
        class_counts: filters.iter().copied().zip(tally.class_counts).collect(),
        witnesses: tally.witnesses,
        complete: !prob.exhausted.load(Ordering::Relaxed),
    };
    for w in &report.witnesses {
        assert!(crate::result::reextracts_to(w, kc)?, "oracle witness does not reproduce the input");
    }
    Ok(report)
}

fn new_tally(filters: usize) -> Tally {
    Tally { class_counts: vec![0; filters], ..Tally::default() }
}

/// Splits the search on the highest pairs when several workers are asked
/// for; partial tallies are merged in prefix order, which is bitmask order.
fn run(prob: &Problem<'_>) -> Tally {
    let m = prob.pairs.len();
    let jobs = prob.caps.jobs.max(1);
    let mut rows = vec![0u64; prob.n];
    if jobs == 1 || m < 8 {
        let mut tally = new_tally(prob.filters.len());
        prob.dfs(m, &mut rows, &mut tally);
        return tally;
    }
    let depth = (usize::BITS - (4 * jobs).leading_zeros()) as usize;
    let depth = depth.min(m - 1);
    let prefixes = 1usize << depth;
    let slots: Vec<Mutex<Option<Tally>>> = (0..prefixes).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= prefixes {
                    break;
                }
                let mut rows = vec![0u64; prob.n];
                let mut tally = new_tally(prob.filters.len());
                // Bit b of the prefix is the value of pair m-depth+b.
                let ok = (0..depth).rev().all(|b| {
                    let p = m - depth + b;
                    let on = i >> b & 1 == 1;
                    !(on && prob.forced_off[p]) && prob.assign(p, on, &mut rows)
                });
                if ok {
                    prob.dfs(m - depth, &mut rows, &mut tally);
                }
                *slots[i].lock().expect("slot") = Some(tally);
            });
        }
    });
    let mut total = new_tally(prob.filters.len());
    for slot in slots {
        let t = slot.into_inner().expect("slot").expect("filled");
        total.count += t.count;
        total.total += t.total;
        for (a, b) in total.class_counts.iter_mut().zip(t.class_counts) {
            *a += b;
        }
        let room = prob.caps.witness_cap - total.witnesses.len();
        total.witnesses.extend(t.witnesses.into_iter().take(room));
        if total.error.is_none() {
            total.error = t.error;
        }
    }
    total
}
