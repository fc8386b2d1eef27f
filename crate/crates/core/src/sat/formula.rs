//! 2-SAT encodings of a connected-triple collection over edge variables.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Labels, Vertex};
use crate::kset::{radix_sort_flat, KSetCollection};

/// Edge variable for the unordered pair `{i, j}`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeVar {
    pub i: Vertex,
    pub j: Vertex,
}

/// Literal: `2 * var` is positive, `2 * var + 1` negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(pub u32);

impl Lit {
    pub fn pos(var: u32) -> Self {
        Lit(2 * var)
    }

    pub fn neg(var: u32) -> Self {
        Lit(2 * var + 1)
    }

    pub fn with_value(var: u32, value: bool) -> Self {
        if value {
            Self::pos(var)
        } else {
            Self::neg(var)
        }
    }

    pub fn var(self) -> u32 {
        self.0 / 2
    }

    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }
}

/// Which constraint a clause encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseKind {
    /// From a connected triple: at least two of its three edges.
    PositiveTriple,
    /// From a disconnected triple: at most one of its three edges.
    NegativeTriple,
}

/// Two-literal disjunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub a: Lit,
    pub b: Lit,
    pub kind: ClauseKind,
}

impl Clause {
    fn new(x: Lit, y: Lit, kind: ClauseKind) -> Self {
        Self { a: x.min(y), b: x.max(y), kind }
    }
}

#[derive(Clone, Debug)]
pub struct Formula2Sat {
    labels: Labels,
    vars: Vec<EdgeVar>,
    var_index: Vec<u32>,
    clauses: Vec<Clause>,
}

const NO_VAR: u32 = u32::MAX;

impl Formula2Sat {
    fn with_vars(labels: Labels, vars: Vec<EdgeVar>) -> Self {
        let n = labels.len();
        let mut var_index = vec![NO_VAR; n * n];
        for (id, v) in vars.iter().enumerate() {
            var_index[v.i as usize * n + v.j as usize] = id as u32;
            var_index[v.j as usize * n + v.i as usize] = id as u32;
        }
        Self { labels, vars, var_index, clauses: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn vars(&self) -> &[EdgeVar] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Variable of pair `{u, v}` if it is materialized.
    pub fn var(&self, u: Vertex, v: Vertex) -> Option<u32> {
        let id = self.var_index[u as usize * self.n() + v as usize];
        (id != NO_VAR && u != v).then_some(id)
    }

    pub fn count(&self, kind: ClauseKind) -> usize {
        self.clauses.iter().filter(|c| c.kind == kind).count()
    }

    /// Adds the three clauses of one triple, skipping clauses that hold
    /// trivially because they mention an absent (always false) variable.
    fn add_triple(&mut self, a: Vertex, b: Vertex, c: Vertex, kind: ClauseKind) {
        let ab = self.var(a, b);
        let ac = self.var(a, c);
        let bc = self.var(b, c);
        for (x, y) in [(ab, ac), (ab, bc), (ac, bc)] {
            match kind {
                ClauseKind::PositiveTriple => {
                    let (x, y) = (x.expect("positive var"), y.expect("positive var"));
                    self.clauses.push(Clause::new(Lit::pos(x), Lit::pos(y), kind));
                }
                ClauseKind::NegativeTriple => {
                    if let (Some(x), Some(y)) = (x, y) {
                        self.clauses.push(Clause::new(Lit::neg(x), Lit::neg(y), kind));
                    }
                }
            }
        }
    }

    /// `p cnf` dump with a variable legend; variables are numbered from 1.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (id, v) in self.vars.iter().enumerate() {
            let _ = writeln!(out, "c {} {} {}", id + 1, self.labels.name(v.i), self.labels.name(v.j));
        }
        let _ = writeln!(out, "p cnf {} {}", self.vars.len(), self.clauses.len());
        let lit = |l: Lit| {
            let v = l.var() as i64 + 1;
            if l.is_neg() {
                -v
            } else {
                v
            }
        };
        for c in &self.clauses {
            let _ = writeln!(out, "{} {} 0", lit(c.a), lit(c.b));
        }
        out
    }
}

fn require_triples(t: &KSetCollection) -> Result<()> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    Ok(())
}

/// One variable per pair, three clauses per triple of the universe.
pub fn build_full_formula(t: &KSetCollection) -> Result<Formula2Sat> {
    require_triples(t)?;
    let n = t.n() as Vertex;
    let mut vars = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            vars.push(EdgeVar { i, j });
        }
    }
    let mut f = Formula2Sat::with_vars(t.labels().clone(), vars);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let kind = if t.contains(&[a, b, c]) {
                    ClauseKind::PositiveTriple
                } else {
                    ClauseKind::NegativeTriple
                };
                f.add_triple(a, b, c, kind);
            }
        }
    }
    Ok(f)
}

/// `M(i, j) = { x : ijx in T }`, grouped by pair.
#[derive(Clone, Debug)]
pub struct PairWitnessMatrix {
    keys: Vec<(Vertex, Vertex)>,
    offsets: Vec<usize>,
    items: Vec<Vertex>,
    lookup: HashMap<(Vertex, Vertex), usize>,
}

impl PairWitnessMatrix {
    pub fn new(t: &KSetCollection) -> Self {
        let mut flat = Vec::with_capacity(t.len() * 9);
        for s in t.iter() {
            let (a, b, c) = (s[0], s[1], s[2]);
            flat.extend_from_slice(&[a, b, c, a, c, b, b, c, a]);
        }
        radix_sort_flat(&mut flat, 3, t.n());
        let mut keys = Vec::new();
        let mut offsets = vec![0];
        let mut items = Vec::with_capacity(flat.len() / 3);
        for r in flat.chunks(3) {
            let key = (r[0], r[1]);
            if keys.last() != Some(&key) {
                if !keys.is_empty() {
                    offsets.push(items.len());
                }
                keys.push(key);
            }
            items.push(r[2]);
        }
        offsets.push(items.len());
        let lookup = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Self { keys, offsets, items, lookup }
    }

    /// Sorted witnesses of the pair, in either order.
    pub fn get(&self, a: Vertex, b: Vertex) -> &[Vertex] {
        let key = (a.min(b), a.max(b));
        match self.lookup.get(&key) {
            Some(&g) => &self.items[self.offsets[g]..self.offsets[g + 1]],
            None => &[],
        }
    }

    /// Pairs with at least one witness, sorted.
    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.keys
    }

    /// Total stored length, `3|T|`.
    pub fn total_len(&self) -> usize {
        self.items.len()
    }
}

/// Formula restricted to pairs that co-occur in some triple.
///
/// Negative clauses for `abx` are generated only from a witnessed pair `ab`
/// and a third vertex `x` witnessed with `a` or `b`; every other negative
/// clause mentions an absent variable and holds trivially.
pub fn build_pruned_formula(t: &KSetCollection) -> Result<Formula2Sat> {
    require_triples(t)?;
    let n = t.n();
    let m = PairWitnessMatrix::new(t);
    let vars = m.pairs().iter().map(|&(i, j)| EdgeVar { i, j }).collect();
    let mut f = Formula2Sat::with_vars(t.labels().clone(), vars);
    for s in t.iter() {
        f.add_triple(s[0], s[1], s[2], ClauseKind::PositiveTriple);
    }
    let mut partners: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(i, j) in m.pairs() {
        partners[i as usize].push(j);
        partners[j as usize].push(i);
    }
    let mut seen = vec![u32::MAX; n];
    for (p, &(a, b)) in m.pairs().iter().enumerate() {
        for &x in partners[a as usize].iter().chain(&partners[b as usize]) {
            if x == a || x == b || seen[x as usize] == p as u32 {
                continue;
            }
            seen[x as usize] = p as u32;
            let mut triple = [a, b, x];
            triple.sort_unstable();
            if !t.contains(&triple) {
                f.add_triple(triple[0], triple[1], triple[2], ClauseKind::NegativeTriple);
            }
        }
    }
    f.clauses.sort_unstable();
    f.clauses.dedup();
    Ok(f)
}
