//! 2-connected outerplanar graphs: peel degree-two vertices down to six.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use super::lookup::OccurrenceProfile;
use super::oracle_fallback;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::{extract_ksets, KSetCollection};
use crate::oracle::generators::{cycle_with_chords, non_crossing_chord_sets};
use crate::oracle::ClassPredicate;
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};

type Fail = String;
type Out<T> = std::result::Result<T, Fail>;
type Triple = [Vertex; 3];

fn sorted3(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

/// Mutable triple set with per-vertex lists.
pub(crate) struct TripleStore {
    all: BTreeSet<Triple>,
    by_vertex: Vec<BTreeSet<Triple>>,
}

impl TripleStore {
    pub(crate) fn new(n: usize, triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut s = Self { all: BTreeSet::new(), by_vertex: vec![BTreeSet::new(); n] };
        for t in triples {
            s.insert(t);
        }
        s
    }

    pub(crate) fn insert(&mut self, t: Triple) {
        let t = sorted3(t);
        if self.all.insert(t) {
            for v in t {
                self.by_vertex[v as usize].insert(t);
            }
        }
    }

    pub(crate) fn remove(&mut self, t: &Triple) {
        if self.all.remove(t) {
            for v in t {
                self.by_vertex[*v as usize].remove(t);
            }
        }
    }

    pub(crate) fn has(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.all.contains(&sorted3([a, b, c]))
    }

    pub(crate) fn of(&self, v: Vertex) -> &BTreeSet<Triple> {
        &self.by_vertex[v as usize]
    }

    pub(crate) fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.all.iter()
    }

    /// Every triple with `v` meets `{w1, w2}` (and there is one).
    fn covered(&self, v: Vertex, w1: Vertex, w2: Vertex) -> bool {
        let tv = self.of(v);
        !tv.is_empty() && tv.iter().all(|t| t.contains(&w1) || t.contains(&w2))
    }

    /// The pair `(w1, w2)` of the degree-two test: `{w1, w2}` meets every
    /// triple with `v` and no other vertex.
    fn degree_two(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let tv = self.of(v);
        let first = tv.iter().next()?;
        let mut found = Vec::new();
        for w1 in first.iter().copied().filter(|&x| x != v) {
            let Some(second) = tv.iter().find(|t| !t.contains(&w1)) else {
                continue;
            };
            for w2 in second.iter().copied().filter(|&x| x != v) {
                let pair = (w1.min(w2), w1.max(w2));
                if found.contains(&pair) || !self.covered(v, w1, w2) {
                    continue;
                }
                let rivals: BTreeSet<Vertex> =
                    self.of(w1).iter().chain(self.of(w2)).flatten().copied().collect();
                let lonely = rivals
                    .into_iter()
                    .filter(|&x| x != v && x != w1 && x != w2)
                    .all(|x| !self.covered(x, w1, w2));
                if lonely {
                    found.push(pair);
                }
            }
        }
        match found[..] {
            [pair] => Some(pair),
            _ => None,
        }
    }
}

/// A degree-two vertex with its neighbours, found from triples alone.
pub fn find_degree2_vertex_outerplanar(t: &KSetCollection) -> Result<Option<(Vertex, Vertex, Vertex)>> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    let store = TripleStore::new(t.n(), t.iter().map(|s| [s[0], s[1], s[2]]));
    Ok((0..t.n() as Vertex).find_map(|v| store.degree_two(v).map(|(a, b)| (v, a, b))))
}

#[derive(Clone, Debug)]
enum Step {
    /// `u` merged into `v`; `z` was the other neighbour of `u`.
    Contract { v: Vertex, u: Vertex, z: Vertex },
    /// `v` removed; `added` when the edge `w1 w2` was put in for it.
    Remove { v: Vertex, w1: Vertex, w2: Vertex, added: bool },
}

fn replay(steps: &[Step], g: &mut Graph) {
    for s in steps.iter().rev() {
        match *s {
            Step::Contract { v, u, z } => {
                g.remove_edge(v, z);
                g.add_edge(v, u);
                g.add_edge(u, z);
            }
            Step::Remove { v, w1, w2, added } => {
                if added {
                    g.remove_edge(w1, w2);
                }
                g.add_edge(v, w1);
                g.add_edge(v, w2);
            }
        }
    }
}

/// Reduces by one vertex. Returns the step taken.
fn reduce_once(store: &mut TripleStore, alive: &[bool]) -> Out<Step> {
    let n = alive.len() as Vertex;
    let (v, (w1, w2)) = (0..n)
        .filter(|&v| alive[v as usize])
        .find_map(|v| store.degree_two(v).map(|p| (v, p)))
        .ok_or("no vertex passes the degree-two test")?;
    // A degree-two neighbour is merged into v.
    for (u, w) in [(w1, w2), (w2, w1)] {
        let Some((a, b)) = store.degree_two(u) else { continue };
        if a != v && b != v {
            continue;
        }
        let z = if a == v { b } else { a };
        if z == w {
            return Err(format!("vertices {v} and {u} close a triangle"));
        }
        let touching: Vec<Triple> = store.of(u).iter().copied().collect();
        for t in &touching {
            store.remove(t);
            if !t.contains(&v) {
                store.insert(t.map(|x| if x == u { v } else { x }));
            }
        }
        store.insert([w, v, z]);
        return Ok(Step::Contract { v, u, z });
    }
    let tv: Vec<Triple> = store.of(v).iter().copied().collect();
    let partners: BTreeSet<Vertex> = tv.iter().flatten().copied().filter(|&x| x != v && x != w1 && x != w2).collect();
    let apart = partners
        .iter()
        .any(|&x| !store.has(w1, w2, x) && (store.has(v, w1, x) || store.has(v, w2, x)));
    for t in &tv {
        store.remove(t);
    }
    if apart {
        for &x in &partners {
            store.insert([w1, w2, x]);
        }
    }
    Ok(Step::Remove { v, w1, w2, added: apart })
}

/// Reconstructs a 2-connected outerplanar graph. Below six vertices the
/// enumeration oracle answers instead.
pub fn reconstruct_outerplanar_2connected(t: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    let n = t.n();
    if n < 6 {
        return oracle_fallback(t, &[ClassPredicate::Outerplanar2Connected]);
    }
    let mut store = TripleStore::new(n, t.iter().map(|s| [s[0], s[1], s[2]]));
    let mut alive = vec![true; n];
    let mut steps = Vec::new();
    for _ in 6..n {
        match reduce_once(&mut store, &alive) {
            Ok(step) => {
                let gone = match step {
                    Step::Contract { u, .. } => u,
                    Step::Remove { v, .. } => v,
                };
                alive[gone as usize] = false;
                steps.push(step);
            }
            Err(reason) => return Ok(ReconstructionResult::Inconsistent(reason)),
        }
    }
    let verts: Vec<Vertex> = (0..n as Vertex).filter(|&v| alive[v as usize]).collect();
    let triples: Vec<Triple> = store.triples().copied().collect();
    let edges = match six_base(&verts, &triples) {
        Ok(e) => e,
        Err(reason) => return Ok(ReconstructionResult::Inconsistent(reason)),
    };
    let mut g = Graph::from_edges(t.labels().clone(), &edges)?;
    replay(&steps, &mut g);
    apply_verify(ReconstructionResult::Unique(g), t, opts)
}

/// Six-vertex 2-connected outerplanar graphs, one per occurrence profile.
pub fn six_vertex_classes() -> &'static BTreeMap<Vec<usize>, Graph> {
    static CLASSES: OnceLock<BTreeMap<Vec<usize>, Graph>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        let order: Vec<Vertex> = (0..6).collect();
        let mut map = BTreeMap::new();
        for chords in non_crossing_chord_sets(6) {
            let g = cycle_with_chords(&order, &chords);
            let profile = OccurrenceProfile::of(&extract_ksets(&g, 3).expect("k=3")).sorted();
            map.entry(profile).or_insert(g);
        }
        map
    })
}

/// Places labels on the class matching the occurrence profile of `triples`
/// over the six vertices `verts`.
fn six_base(verts: &[Vertex], triples: &[Triple]) -> Out<Vec<(Vertex, Vertex)>> {
    assert_eq!(verts.len(), 6);
    let pos = |v: Vertex| verts.iter().position(|&x| x == v).expect("vertex among the six");
    let local: BTreeSet<Triple> = triples.iter().map(|t| sorted3(t.map(|x| pos(x) as Vertex))).collect();
    let occ = OccurrenceProfile::from_triples(6, &local.iter().copied().collect::<Vec<_>>());
    let rep = six_vertex_classes()
        .get(&occ.sorted())
        .ok_or("occurrence counts match no six-vertex outerplanar graph")?;
    let rep_occ = OccurrenceProfile::of(&extract_ksets(rep, 3).expect("k=3"));
    let mut found: BTreeSet<Vec<(Vertex, Vertex)>> = BTreeSet::new();
    let mut image = vec![Vertex::MAX; 6];
    let mut used = [false; 6];
    place(0, rep, &rep_occ.occ, &occ.occ, &local, &mut image, &mut used, &mut found);
    match found.len() {
        1 => {
            let edges = found.pop_first().expect("one");
            Ok(edges.into_iter().map(|(a, b)| (verts[a as usize], verts[b as usize])).collect())
        }
        0 => Err("no labelling of the six-vertex class fits".into()),
        _ => Err("several labellings of the six-vertex class fit".into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn place(
    i: usize,
    rep: &Graph,
    rep_occ: &[usize],
    occ: &[usize],
    target: &BTreeSet<Triple>,
    image: &mut [Vertex],
    used: &mut [bool; 6],
    found: &mut BTreeSet<Vec<(Vertex, Vertex)>>,
) {
    if i == 6 {
        let mut edges: Vec<(Vertex, Vertex)> = rep
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (image[a as usize], image[b as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let g = Graph::with_edges(6, &edges);
        let tri: BTreeSet<Triple> =
            extract_ksets(&g, 3).expect("k=3").iter().map(|s| [s[0], s[1], s[2]]).collect();
        if tri == *target {
            found.insert(edges);
        }
        return;
    }
    for x in 0..6 {
        if !used[x] && occ[x] == rep_occ[i] {
            used[x] = true;
            image[i] = x as Vertex;
            place(i + 1, rep, rep_occ, occ, target, image, used, found);
            used[x] = false;
        }
    }
}

/// The six-vertex base case on its own.
pub fn reconstruct_outerplanar_six(t: &KSetCollection) -> Result<ReconstructionResult> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    if t.n() != 6 {
        return Err(Error::InvalidParameter(format!("six-vertex base case given {} vertices", t.n())));
    }
    let triples: Vec<Triple> = t.iter().map(|s| [s[0], s[1], s[2]]).collect();
    Ok(match six_base(&[0, 1, 2, 3, 4, 5], &triples) {
        Ok(edges) => ReconstructionResult::Unique(Graph::from_edges(t.labels().clone(), &edges)?),
        Err(reason) => ReconstructionResult::Inconsistent(reason),
    })
}
