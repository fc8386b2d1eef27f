//! Triangle-free graphs: every co-occurring pair is decided locally.

use std::cell::OnceCell;

use super::lookup::OrderedTripleList;
use super::oracle_fallback;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::KSetCollection;
use crate::oracle::ClassPredicate;
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};
use crate::tree::VertexTripleIndex;

type Fail = String;
type Out<T> = std::result::Result<T, Fail>;

struct Decider<'a> {
    t: &'a KSetCollection,
    list: OrderedTripleList,
    index: OnceCell<VertexTripleIndex>,
}

impl Decider<'_> {
    fn has(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.t.contains_unsorted(&[a, b, c])
    }

    fn dominates(&self, v: Vertex, u: Vertex) -> bool {
        self.index
            .get_or_init(|| VertexTripleIndex::build(self.t.flat(), self.t.n(), &mut 0))
            .dominates(v, u)
    }

    /// Decides `ab` when it heads two triples; `None` when it heads fewer.
    fn decide_multi(&self, a: Vertex, b: Vertex) -> Out<Option<bool>> {
        let mut tails = self.list.tails(a, b);
        let (Some(c), Some(d)) = (tails.next(), tails.next()) else {
            return Ok(None);
        };
        if !self.has(a, c, d) || !self.has(b, c, d) {
            return Ok(Some(true));
        }
        let diagonals = self.c4_diagonals([a, b, c, d])?;
        Ok(Some(!diagonals.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a))))
    }

    /// The two non-edges of the 4-cycle on `q`, read off an outside vertex
    /// adjacent to it.
    fn c4_diagonals(&self, q: [Vertex; 4]) -> Out<[(Vertex, Vertex); 2]> {
        let pairs: Vec<(Vertex, Vertex)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (q[i], q[j]))).collect();
        let e = pairs
            .iter()
            .find_map(|&(x, y)| self.list.tails(x, y).find(|z| !q.contains(z)))
            .ok_or_else(|| format!("no vertex outside the 4-cycle on {q:?}"))?;
        let linked: Vec<(Vertex, Vertex)> = pairs.iter().copied().filter(|&(x, y)| self.has(e, x, y)).collect();
        let other = |used: &[Vertex]| q.iter().copied().filter(|v| !used.contains(v)).collect::<Vec<_>>();
        match linked.len() {
            // `e` hangs on one corner `a` only: `a b e` and `a d e` are the linked triples.
            2 => {
                let ((p, r), (s, u)) = (linked[0], linked[1]);
                let a = if p == s || p == u { p } else { r };
                let b = if p == a { r } else { p };
                let d = if s == a { u } else { s };
                let c = other(&[a, b, d]);
                if c.len() != 1 || b == d || (s != a && u != a) {
                    return Err(format!("outside vertex {e} meets the 4-cycle on {q:?} inconsistently"));
                }
                Ok([(a, c[0]), (b, d)])
            }
            // `e` sees two opposite corners; the one unlinked pair is a diagonal.
            5 => {
                let &(x, y) = pairs.iter().find(|p| !linked.contains(p)).expect("one pair left");
                let rest = other(&[x, y]);
                Ok([(x, y), (rest[0], rest[1])])
            }
            _ => Err(format!("outside vertex {e} meets the 4-cycle on {q:?} inconsistently")),
        }
    }

    fn decide(&self, a: Vertex, b: Vertex) -> Out<bool> {
        if let Some(edge) = self.decide_multi(a, b)? {
            return Ok(edge);
        }
        let c = self.list.tails(a, b).next().ok_or_else(|| format!("pair {a} {b} is in no triple"))?;
        // Exactly two of ab, ac, bc are edges.
        Ok(match (self.decide_multi(a, c)?, self.decide_multi(b, c)?) {
            (Some(false), _) | (_, Some(false)) => true,
            (Some(true), Some(true)) => false,
            // A leaf hangs on a or c, whichever the other dominates.
            (Some(true), None) => self.dominates(c, a) && !self.dominates(a, c),
            (None, Some(true)) => self.dominates(c, b) && !self.dominates(b, c),
            (None, None) => return Err(format!("triple {a} {b} {c} touches nothing else")),
        })
    }
}

/// Reconstructs a connected triangle-free graph from its connected triples.
/// Below five vertices the enumeration oracle answers instead.
pub fn reconstruct_triangle_free(t: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    if t.n() < 5 {
        return oracle_fallback(t, &[ClassPredicate::Connected, ClassPredicate::TriangleFree]);
    }
    let indexed;
    let t = if opts.index == crate::kset::IndexKind::Sorted {
        t
    } else {
        indexed = t.clone().with_index(opts.index);
        &indexed
    };
    let decider = Decider { t, list: OrderedTripleList::new(t), index: OnceCell::new() };
    let mut g = Graph::new(t.labels().clone());
    for (a, b) in decider.list.heads() {
        match decider.decide(a, b) {
            Ok(true) => g.add_edge(a, b),
            Ok(false) => {}
            Err(reason) => return Ok(ReconstructionResult::Inconsistent(reason)),
        }
    }
    apply_verify(ReconstructionResult::Unique(g), t, opts)
}
