//! Trees on at most five vertices, identified by per-vertex triple counts.

use std::sync::OnceLock;

use crate::graph::{Graph, Labels, Vertex};
use crate::kset::extract_ksets;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiveShape {
    Path,
    Chair,
    Star,
}

/// Sorted occurrence multisets of the three 5-vertex trees, computed from
/// canonical drawings.
pub fn five_vertex_profiles() -> &'static [(FiveShape, [usize; 5]); 3] {
    static PROFILES: OnceLock<[(FiveShape, [usize; 5]); 3]> = OnceLock::new();
    PROFILES.get_or_init(|| {
        let shapes = [
            (FiveShape::Path, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
            (FiveShape::Chair, vec![(0, 1), (0, 2), (0, 3), (3, 4)]),
            (FiveShape::Star, vec![(0, 1), (0, 2), (0, 3), (0, 4)]),
        ];
        shapes.map(|(shape, edges)| {
            let t = extract_ksets(&Graph::with_edges(5, &edges), 3).expect("k=3 on 5 vertices");
            let mut occ: [usize; 5] = t.occurrences().try_into().expect("five vertices");
            occ.sort_unstable();
            (shape, occ)
        })
    })
}

/// Edges of the tree on the five vertices `verts` whose triples are
/// `triples` (each sorted), or `None` if the counts fit no tree.
pub fn base_case_five(verts: &[Vertex], triples: &[[Vertex; 3]]) -> Option<Vec<(Vertex, Vertex)>> {
    assert_eq!(verts.len(), 5);
    let occ = |v: Vertex| triples.iter().filter(|t| t.contains(&v)).count();
    let mut by_occ: Vec<(usize, Vertex)> = verts.iter().map(|&v| (occ(v), v)).collect();
    by_occ.sort_unstable();
    let profile: Vec<usize> = by_occ.iter().map(|&(c, _)| c).collect();
    let shape = five_vertex_profiles().iter().find(|(_, p)| p[..] == profile[..])?.0;
    let with = |c: usize| by_occ.iter().filter(move |&&(o, _)| o == c).map(|&(_, v)| v);
    // The unique triple of a once-occurring vertex.
    let triple_of = |v: Vertex| triples.iter().find(|t| t.contains(&v)).copied();
    let edges = match shape {
        FiveShape::Star => {
            let centre = with(6).next()?;
            verts.iter().filter(|&&v| v != centre).map(|&v| (centre, v)).collect()
        }
        FiveShape::Path => {
            let centre = with(3).next()?;
            let mut edges = Vec::new();
            for end in with(1) {
                let t = triple_of(end)?;
                let inner = t.iter().copied().find(|&x| x != end && x != centre)?;
                edges.push((end, inner));
                edges.push((inner, centre));
            }
            edges
        }
        FiveShape::Chair => {
            let centre = with(4).next()?;
            let knee = with(3).next()?;
            let foot = with(1).next()?;
            let mut edges = vec![(centre, knee), (knee, foot)];
            edges.extend(with(2).map(|v| (centre, v)));
            edges
        }
    };
    Some(edges)
}

/// Reconstructions on three and four vertices, where paths are ambiguous.
pub(crate) enum SmallTree {
    Unique(Graph),
    Ambiguous(Vec<Graph>),
}

pub(crate) fn small_tree(labels: &Labels, triples: &[[Vertex; 3]]) -> Option<SmallTree> {
    let n = labels.len();
    let graph = |edges: &[(Vertex, Vertex)]| Graph::from_edges(labels.clone(), edges).expect("valid edges");
    match n {
        3 if triples.len() == 1 => Some(SmallTree::Ambiguous(
            (0..3).map(|c| graph(&[(c, (c + 1) % 3), (c, (c + 2) % 3)])).collect(),
        )),
        4 if triples.len() == 3 => {
            let centre = (0..4).find(|v| triples.iter().all(|t| t.contains(v)))?;
            let edges: Vec<_> = (0..4).filter(|&v| v != centre).map(|v| (centre, v)).collect();
            Some(SmallTree::Unique(graph(&edges)))
        }
        4 if triples.len() == 2 => {
            let (s, t) = (triples[0], triples[1]);
            let middle: Vec<Vertex> = s.iter().copied().filter(|x| t.contains(x)).collect();
            if middle.len() != 2 {
                return None;
            }
            let a = s.iter().copied().find(|x| !middle.contains(x))?;
            let d = t.iter().copied().find(|x| !middle.contains(x))?;
            let (b, c) = (middle[0], middle[1]);
            Some(SmallTree::Ambiguous(vec![
                graph(&[(a, b), (b, c), (c, d)]),
                graph(&[(a, c), (c, b), (b, d)]),
            ]))
        }
        _ => None,
    }
}
