//! Labelled simple undirected graphs with dense bit-row adjacency.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Dense vertex index in `[0, n)`.
pub type Vertex = u32;

/// Bijection between opaque text labels and dense indices.
///
/// Indices follow first-appearance order of the labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
}

impl Labels {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `0`, `1`, ..., `n-1`.
    pub fn numbered(n: usize) -> Self {
        let mut labels = Self::new();
        for i in 0..n {
            labels.names.push(i.to_string());
            labels.index.insert(i.to_string(), i as Vertex);
        }
        labels
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels = Self::new();
        for name in names {
            let name = name.into();
            if labels.index.contains_key(&name) {
                return Err(Error::DuplicateLabel(name));
            }
            labels.push(name)?;
        }
        Ok(labels)
    }

    /// Returns the index of `name`, inserting it at the end if it is new.
    pub fn intern(&mut self, name: &str) -> Result<Vertex> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        self.push(name.to_string())
    }

    fn push(&mut self, name: String) -> Result<Vertex> {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidLabel(name));
        }
        let v = self.names.len() as Vertex;
        self.index.insert(name.clone(), v);
        self.names.push(name);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v as usize]
    }

    pub fn get(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Vertex> {
        self.get(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Labels restricted to `keep`, in the order given.
    pub fn subset(&self, keep: &[Vertex]) -> Self {
        Self::from_names(keep.iter().map(|&v| self.name(v).to_string()))
            .expect("subset of distinct labels")
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Labelled, simple, undirected graph. Connectivity is a predicate, not an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Labels,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn new(labels: Labels) -> Self {
        let n = labels.len();
        let words = words_for(n).max(1);
        Self { labels, words, rows: vec![0; n * words] }
    }

    /// Edgeless graph on numbered vertices `0..n`.
    pub fn empty(n: usize) -> Self {
        Self::new(Labels::numbered(n))
    }

    pub fn from_edges(labels: Labels, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Self::new(labels);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::SelfLoop(g.labels.name(u).to_string()));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Numbered graph on `0..n` from an edge list.
    pub fn with_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        Self::from_edges(Labels::numbered(n), edges).expect("valid edge list")
    }

    /// Graph on labels given as strings, e.g. `Graph::labelled(&["a","b"], &[("a","b")])`.
    pub fn labelled(names: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let labels = Labels::from_names(names.iter().copied())?;
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            pairs.push((labels.lookup(u)?, labels.lookup(v)?));
        }
        Self::from_edges(labels, &pairs)
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { index: v as usize, n: self.n() })
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        self.labels.name(v)
    }

    fn row(&self, v: Vertex) -> &[u64] {
        let start = v as usize * self.words;
        &self.rows[start..start + self.words]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let v = v as usize;
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.set_bit(u, v, true);
        self.set_bit(v, u, true);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.set_bit(u, v, false);
        self.set_bit(v, u, false);
    }

    fn set_bit(&mut self, u: Vertex, v: Vertex, on: bool) {
        let idx = u as usize * self.words + v as usize / 64;
        let mask = 1u64 << (v as usize % 64);
        if on {
            self.rows[idx] |= mask;
        } else {
            self.rows[idx] &= !mask;
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some((w * 64) as Vertex + b)
            })
        })
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n() as Vertex).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n() as Vertex {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// True iff the induced subgraph on `set` is connected. Empty sets are not connected.
    pub fn is_connected_subset(&self, set: &[Vertex]) -> Result<bool> {
        for &v in set {
            self.check(v)?;
        }
        Ok(self.connected_unchecked(set))
    }

    pub(crate) fn connected_unchecked(&self, set: &[Vertex]) -> bool {
        match set.len() {
            0 => false,
            1 => true,
            2 => self.has_edge(set[0], set[1]),
            3 => {
                let e = self.has_edge(set[0], set[1]) as u8
                    + self.has_edge(set[0], set[2]) as u8
                    + self.has_edge(set[1], set[2]) as u8;
                e >= 2
            }
            _ => {
                let mut seen = vec![false; set.len()];
                let mut stack = vec![0usize];
                seen[0] = true;
                let mut count = 1;
                while let Some(i) = stack.pop() {
                    for j in 0..set.len() {
                        if !seen[j] && self.has_edge(set[i], set[j]) {
                            seen[j] = true;
                            count += 1;
                            stack.push(j);
                        }
                    }
                }
                count == set.len()
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        self.component_of(0).len() == self.n()
    }

    /// Vertices reachable from `start`, sorted.
    pub fn component_of(&self, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start as usize] = true;
        let mut out = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Induced subgraph on `keep` (relabelled densely in the given order).
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut g = Graph::new(self.labels.subset(keep));
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i as Vertex, j as Vertex);
                }
            }
        }
        g
    }

    /// Same graph with vertex `v` renamed to `perm[v]`, keeping the label list.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::new(self.labels.clone());
        for (u, v) in self.edges() {
            g.add_edge(perm[u as usize], perm[v as usize]);
        }
        g
    }

    /// Copy of this graph's edges over another label set of the same size.
    pub fn with_labels(&self, labels: Labels) -> Graph {
        assert_eq!(labels.len(), self.n());
        let mut g = self.clone();
        g.labels = labels;
        g
    }

    /// Edges as label pairs, used for diagnostics and text output.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.label(u).to_string(), self.label(v).to_string()))
            .collect()
    }

    /// Graphviz rendering with vertices in index order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() as Vertex {
            let _ = writeln!(out, "  \"{}\";", escape_dot(self.label(v)));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                escape_dot(self.label(u)),
                escape_dot(self.label(v))
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
