//! Maximal planar graphs: split on separating triangles, solve small sides
//! directly and 4-connected parts by growing balls around a wheel.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::{extract_ksets, for_each_subset, KSetCollection};
use crate::lift::UnionFind;
use crate::oracle::predicates::is_maximal_planar;
use crate::result::{apply_verify, ReconstructOptions, ReconstructionResult};

type Fail = String;
type Out<T> = std::result::Result<T, Fail>;
type Triple = [Vertex; 3];
type Edge = (Vertex, Vertex);

/// A 3-set whose removal splits the vertices, as seen from the triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorCertificate {
    pub s: [Vertex; 3],
    /// Component holding the smallest vertex outside `s`.
    pub v1: Vec<Vertex>,
    /// Everything else outside `s`.
    pub v2: Vec<Vertex>,
    pub components: usize,
}

/// Components of `verts` minus `s`, joined by triples avoiding `s`.
fn split(s: &[Vertex], verts: &[Vertex], triples: &[Triple], n: usize) -> Vec<Vec<Vertex>> {
    let mut uf = UnionFind::new(n);
    for t in triples {
        if !t.iter().any(|x| s.contains(x)) {
            uf.union(t[0] as usize, t[1] as usize);
            uf.union(t[0] as usize, t[2] as usize);
        }
    }
    let mut comps: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for &v in verts.iter().filter(|v| !s.contains(v)) {
        comps.entry(uf.find(v as usize)).or_default().push(v);
    }
    let mut out: Vec<Vec<Vertex>> = comps.into_values().collect();
    out.sort();
    out
}

fn certificate(s: [Vertex; 3], comps: Vec<Vec<Vertex>>) -> SeparatorCertificate {
    let components = comps.len();
    let mut it = comps.into_iter();
    let v1 = it.next().unwrap_or_default();
    let mut v2: Vec<Vertex> = it.flatten().collect();
    v2.sort_unstable();
    SeparatorCertificate { s, v1, v2, components }
}

fn triples_of(t: &KSetCollection) -> Vec<Triple> {
    t.iter().map(|s| [s[0], s[1], s[2]]).collect()
}

/// Every 3-set that splits the rest into at least two parts, in
/// lexicographic order.
pub fn find_size3_separators(t: &KSetCollection) -> Result<Vec<SeparatorCertificate>> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    let n = t.n();
    let verts: Vec<Vertex> = (0..n as Vertex).collect();
    let triples = triples_of(t);
    let mut out = Vec::new();
    for_each_subset(&verts, 3, |s| {
        let comps = split(s, &verts, &triples, n);
        if comps.len() >= 2 {
            out.push(certificate([s[0], s[1], s[2]], comps));
        }
        true
    });
    Ok(out)
}

struct Solver<'a> {
    t: &'a KSetCollection,
}

impl Solver<'_> {
    fn has(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.t.contains_unsorted(&[a, b, c])
    }

    /// Edges of the maximal planar graph on `verts` (at least seven).
    fn solve(&self, verts: &[Vertex], triples: &[Triple]) -> Out<Vec<Edge>> {
        for s in triples {
            let comps = split(s, verts, triples, self.t.n());
            // A two-vertex side falls apart into singletons; another
            // separator inside it is cleaner.
            if comps.len() != 2 {
                continue;
            }
            let mut edges = BTreeSet::new();
            for (side, other) in [(&comps[0], &comps[1]), (&comps[1], &comps[0])] {
                let mut sub: Vec<Vertex> = side.iter().chain(s.iter()).copied().collect();
                sub.sort_unstable();
                let inside: Vec<Triple> =
                    triples.iter().copied().filter(|t| t.iter().all(|x| sub.binary_search(x).is_ok())).collect();
                let part = if sub.len() >= 7 {
                    self.solve(&sub, &inside)?
                } else {
                    self.small_side(*s, side, other, &inside)?
                };
                edges.extend(part);
            }
            return Ok(edges.into_iter().collect());
        }
        self.four_connected(verts, triples)
    }

    /// Side `side` of the separating triangle `s`, at most three vertices.
    fn small_side(&self, s: Triple, side: &[Vertex], other: &[Vertex], inside: &[Triple]) -> Out<Vec<Edge>> {
        let mut fixed: Vec<Edge> = vec![(s[0], s[1]), (s[0], s[2]), (s[1], s[2])];
        for &x in side {
            for &a in &s {
                // `a` has a neighbour across the separator.
                if other.iter().any(|&u| self.has(a, u, x)) {
                    fixed.push((a, x));
                }
            }
        }
        let mut verts: Vec<Vertex> = side.iter().chain(s.iter()).copied().collect();
        verts.sort_unstable();
        let local = |v: Vertex| verts.binary_search(&v).expect("side vertex") as Vertex;
        let target: BTreeSet<Triple> = inside.iter().map(|t| t.map(local)).collect();
        let inner: Vec<Edge> =
            (0..side.len()).flat_map(|i| (i + 1..side.len()).map(move |j| (side[i], side[j]))).collect();
        let m = verts.len();
        let mut fits = Vec::new();
        for mask in 0..1u32 << inner.len() {
            let mut edges = fixed.clone();
            edges.extend(inner.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            if edges.len() != 3 * m - 6 {
                continue;
            }
            let g = Graph::with_edges(m, &edges.iter().map(|&(a, b)| (local(a), local(b))).collect::<Vec<_>>());
            let tri: BTreeSet<Triple> = triples_of(&extract_ksets(&g, 3).expect("k=3")).into_iter().collect();
            if tri == target && is_maximal_planar(&g).unwrap_or(false) {
                fits.push(edges);
            }
        }
        match fits.len() {
            1 => Ok(fits.pop().expect("one")),
            0 => Err(format!("no triangulation fits the side {side:?} of {s:?}")),
            _ => Err(format!("several triangulations fit the side {side:?} of {s:?}")),
        }
    }

    fn four_connected(&self, verts: &[Vertex], triples: &[Triple]) -> Out<Vec<Edge>> {
        let n = self.t.n();
        // Partners of each vertex within `verts`.
        let mut partners: Vec<Vec<[Vertex; 2]>> = vec![Vec::new(); n];
        for t in triples {
            partners[t[0] as usize].push([t[1], t[2]]);
            partners[t[1] as usize].push([t[0], t[2]]);
            partners[t[2] as usize].push([t[0], t[1]]);
        }
        let (centre, rim) = verts
            .iter()
            .find_map(|&v| self.wheel(v, &partners))
            .ok_or("no vertex of degree at least five has a recognisable wheel")?;

        let mut nb: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        fn add(nb: &mut [BTreeSet<Vertex>], a: Vertex, b: Vertex) {
            nb[a as usize].insert(b);
            nb[b as usize].insert(a);
        }
        let mut dist = vec![usize::MAX; n];
        dist[centre as usize] = 0;
        for (i, &w) in rim.iter().enumerate() {
            dist[w as usize] = 1;
            add(&mut nb, centre, w);
            add(&mut nb, w, rim[(i + 1) % rim.len()]);
        }
        let mut layer = rim.clone();
        let mut level = 1;
        loop {
            level += 1;
            let mut next = BTreeSet::new();
            for &x in &layer {
                let y = *nb[x as usize]
                    .iter()
                    .find(|&&y| dist[y as usize] == level - 2)
                    .ok_or_else(|| format!("vertex {x} has no neighbour one layer down"))?;
                for p in &partners[x as usize] {
                    let q = if p[0] == y { p[1] } else if p[1] == y { p[0] } else { continue };
                    if dist[q as usize] >= level {
                        dist[q as usize] = level;
                        add(&mut nb, x, q);
                        next.insert(q);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            // Edges inside the new layer.
            let down = |nb: &[BTreeSet<Vertex>], u: Vertex| -> Vec<Vertex> {
                nb[u as usize].iter().copied().filter(|&x| dist[x as usize] == level - 1).collect()
            };
            let mut found = Vec::new();
            for &u in &next {
                let du = down(&nb, u);
                let cands: BTreeSet<Vertex> = partners[u as usize]
                    .iter()
                    .flatten()
                    .copied()
                    .filter(|&z| z > u && dist[z as usize] == level)
                    .collect();
                for z in cands {
                    let dz = down(&nb, z);
                    let edge = match du.iter().find(|x| dz.contains(x)) {
                        Some(&x) => {
                            let around = &nb[x as usize];
                            match around.len() {
                                4 => false,
                                d if d >= 5 => {
                                    around.iter().filter(|&&y| y != u && y != z && self.has(u, z, y)).count() >= 2
                                }
                                _ => return Err(format!("vertex {x} has fewer than four neighbours")),
                            }
                        }
                        None => self.has(du[0], u, z),
                    };
                    if edge {
                        found.push((u, z));
                    }
                }
            }
            for (u, z) in found {
                add(&mut nb, u, z);
            }
            layer = next.into_iter().collect();
        }
        if let Some(&v) = verts.iter().find(|&&v| dist[v as usize] == usize::MAX) {
            return Err(format!("vertex {v} was never reached"));
        }
        let mut edges = Vec::new();
        for &v in verts {
            edges.extend(nb[v as usize].iter().filter(|&&w| w > v).map(|&w| (v, w)));
        }
        Ok(edges)
    }

    /// The rim of the wheel around `v`, in cyclic order, when the triples
    /// single out one neighbourhood of size at least five.
    fn wheel(&self, v: Vertex, partners: &[Vec<[Vertex; 2]>]) -> Option<(Vertex, Vec<Vertex>)> {
        // h: pairs that form a triple with v.
        let mut h: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for p in &partners[v as usize] {
            h.entry(p[0]).or_default().insert(p[1]);
            h.entry(p[1]).or_default().insert(p[0]);
        }
        let adj = |a: Vertex, b: Vertex| h.get(&a).is_some_and(|s| s.contains(&b));
        let clique = |set: &[Vertex]| set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| adj(a, b)));
        // Neighbours of v see a vertex outside N(v); non-neighbours see only N(v).
        let (sure, open): (Vec<Vertex>, Vec<Vertex>) = h.keys().copied().partition(|&u| {
            let hu: Vec<Vertex> = h[&u].iter().copied().collect();
            !clique(&hu)
        });
        // Split partitions of h restricted to `open`.
        let mut order = open.clone();
        order.sort_by_key(|&u| std::cmp::Reverse(open.iter().filter(|&&x| adj(u, x)).count()));
        let mut k: Vec<Vertex> = Vec::new();
        for &u in &order {
            if k.iter().all(|&x| adj(u, x)) {
                k.push(u);
            }
        }
        let mut cands: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        cands.insert(k.clone());
        for i in 0..=k.len() {
            let mut base = k.clone();
            if i < k.len() {
                base.remove(i);
                cands.insert(base.clone());
            }
            for &x in open.iter().filter(|x| !k.contains(x)) {
                let mut c = base.clone();
                c.push(x);
                cands.insert(c);
            }
        }
        let mut wheels = Vec::new();
        for s in cands {
            let rest: Vec<Vertex> = open.iter().copied().filter(|x| !s.contains(x)).collect();
            if !clique(&s) || rest.iter().enumerate().any(|(i, &a)| rest[i + 1..].iter().any(|&b| adj(a, b))) {
                continue;
            }
            let mut nbhd: Vec<Vertex> = sure.iter().chain(s.iter()).copied().collect();
            nbhd.sort_unstable();
            if nbhd.len() < 5 || !clique(&nbhd) {
                continue;
            }
            if let Some(rim) = self.rim_cycle(&nbhd, partners) {
                wheels.push(rim);
            }
        }
        match wheels.len() {
            1 => Some((v, wheels.pop().expect("one"))),
            _ => None,
        }
    }

    /// Cyclic order of `set` when its triples are exactly the consecutive
    /// triples of one cycle.
    fn rim_cycle(&self, set: &[Vertex], partners: &[Vec<[Vertex; 2]>]) -> Option<Vec<Vertex>> {
        let m = set.len();
        let inside = |x: Vertex| set.binary_search(&x).is_ok();
        let mut within: BTreeSet<Triple> = BTreeSet::new();
        for &a in set {
            for p in &partners[a as usize] {
                if inside(p[0]) && inside(p[1]) {
                    let mut t = [a, p[0], p[1]];
                    t.sort_unstable();
                    within.insert(t);
                }
            }
        }
        if within.len() != m {
            return None;
        }
        let mut pair_count: BTreeMap<Edge, usize> = BTreeMap::new();
        for t in &within {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                *pair_count.entry((a, b)).or_default() += 1;
            }
        }
        let mut next: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for (&(a, b), &c) in &pair_count {
            if c == 2 {
                next.entry(a).or_default().push(b);
                next.entry(b).or_default().push(a);
            }
        }
        if next.len() != m || next.values().any(|x| x.len() != 2) {
            return None;
        }
        let mut cycle = vec![set[0]];
        let mut prev = set[0];
        let mut cur = next[&set[0]][0];
        while cur != set[0] {
            cycle.push(cur);
            let nx = next[&cur].iter().copied().find(|&x| x != prev)?;
            prev = cur;
            cur = nx;
            if cycle.len() > m {
                return None;
            }
        }
        if cycle.len() != m {
            return None;
        }
        let expected: BTreeSet<Triple> = (0..m)
            .map(|i| {
                let mut t = [cycle[i], cycle[(i + 1) % m], cycle[(i + 2) % m]];
                t.sort_unstable();
                t
            })
            .collect();
        (expected == within).then_some(cycle)
    }
}

fn check_input(t: &KSetCollection, what: &'static str) -> Result<()> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    if t.n() < 7 {
        return Err(Error::TooFewVertices { what, min: 7, n: t.n() });
    }
    Ok(())
}

fn finish(t: &KSetCollection, edges: Out<Vec<Edge>>, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    let res = match edges {
        Ok(edges) => ReconstructionResult::Unique(Graph::from_edges(t.labels().clone(), &edges)?),
        Err(reason) => ReconstructionResult::Inconsistent(reason),
    };
    apply_verify(res, t, ReconstructOptions { verify: true, ..opts })
}

fn indexed(t: &KSetCollection, opts: ReconstructOptions) -> std::borrow::Cow<'_, KSetCollection> {
    if opts.index == crate::kset::IndexKind::Sorted {
        std::borrow::Cow::Borrowed(t)
    } else {
        std::borrow::Cow::Owned(t.clone().with_index(opts.index))
    }
}

/// Reconstructs a maximal planar graph on at least seven vertices. The
/// output is always checked by re-extraction.
pub fn reconstruct_max_planar(t: &KSetCollection, opts: ReconstructOptions) -> Result<ReconstructionResult> {
    check_input(t, "maximal planar reconstruction")?;
    let t = indexed(t, opts);
    let solver = Solver { t: &t };
    let verts: Vec<Vertex> = (0..t.n() as Vertex).collect();
    let edges = solver.solve(&verts, &triples_of(&t));
    finish(&t, edges, opts)
}

/// The 4-connected case on its own: no separating triangle is looked for.
pub fn reconstruct_max_planar_4connected(t: &KSetCollection) -> Result<ReconstructionResult> {
    check_input(t, "4-connected maximal planar reconstruction")?;
    let solver = Solver { t };
    let verts: Vec<Vertex> = (0..t.n() as Vertex).collect();
    let edges = solver.four_connected(&verts, &triples_of(t));
    finish(t, edges, ReconstructOptions::default())
}

/// The graph on `s ∪ v1` for a separating triangle `s` whose side `v1` has at
/// most three vertices. Vertices of the result follow the sorted order of
/// `s ∪ v1`.
pub fn small_planar_side(t: &KSetCollection, s: [Vertex; 3], v1: &[Vertex]) -> Result<ReconstructionResult> {
    if t.k() != 3 {
        return Err(Error::WrongK { expected: 3, got: t.k() });
    }
    if v1.is_empty() || v1.len() > 3 {
        return Err(Error::InvalidParameter(format!("side of {} vertices", v1.len())));
    }
    let n = t.n();
    for &v in s.iter().chain(v1) {
        if v as usize >= n {
            return Err(Error::VertexOutOfRange { index: v as usize, n });
        }
    }
    let mut keep: Vec<Vertex> = s.iter().chain(v1).copied().collect();
    keep.sort_unstable();
    keep.dedup();
    if keep.len() != 3 + v1.len() {
        return Err(Error::InvalidParameter("side overlaps the separator".into()));
    }
    let other: Vec<Vertex> = (0..n as Vertex).filter(|v| keep.binary_search(v).is_err()).collect();
    let inside: Vec<Triple> =
        triples_of(t).into_iter().filter(|tr| tr.iter().all(|x| keep.binary_search(x).is_ok())).collect();
    let solver = Solver { t };
    Ok(match solver.small_side(s, v1, &other, &inside) {
        Ok(edges) => {
            let local: Vec<Edge> = edges
                .iter()
                .map(|&(a, b)| (keep.binary_search(&a).unwrap() as Vertex, keep.binary_search(&b).unwrap() as Vertex))
                .collect();
            ReconstructionResult::Unique(Graph::from_edges(t.labels().subset(&keep), &local)?)
        }
        Err(reason) => ReconstructionResult::Inconsistent(reason),
    })
}
