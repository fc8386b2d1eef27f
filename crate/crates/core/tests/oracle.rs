use std::collections::BTreeSet;

use triples::oracle::generators::{
    all_trees, gen_ambiguous_family, gen_apollonian, gen_bipyramid, gen_caveat_pair, gen_complete, gen_cycle,
    gen_cycle_chords, gen_gnp, gen_icosahedron, gen_octahedron, gen_petersen, gen_tree, shuffled, AmbiguousFamily,
};
use triples::oracle::predicates::{girth, is_maximal_planar, is_outerplanar_2connected, is_tree, is_triangle_free};
use triples::oracle::{enumerate_consistent, ClassPredicate, OracleCaps};
use triples::{extract_ksets, Graph, KSetCollection, Vertex};

type Edges = Vec<(Vertex, Vertex)>;

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    let n = n as Vertex;
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn graph_of(n: usize, m: u64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, e)| e).collect();
    Graph::with_edges(n, &edges)
}

/// Consistent graphs in ascending edge-bitmask order, by trying every edge set.
fn brute(kc: &KSetCollection) -> Vec<Graph> {
    let n = kc.n();
    (0u64..1 << pairs(n).len())
        .map(|m| graph_of(n, m).with_labels(kc.labels().clone()))
        .filter(|g| extract_ksets(g, kc.k()).unwrap() == *kc)
        .collect()
}

fn has_triangle(g: &Graph) -> bool {
    let n = g.n() as Vertex;
    (0..n).any(|a| (a + 1..n).any(|b| g.has_edge(a, b) && (b + 1..n).any(|c| g.has_edge(a, c) && g.has_edge(b, c))))
}

#[test]
fn oracle_matches_brute_force_on_small_universes() {
    for seed in 0..30 {
        let n = 4 + seed as usize % 3;
        let g = gen_gnp(n, 0.4, seed).unwrap();
        for k in [3, 4] {
            let kc = extract_ksets(&g, k).unwrap();
            let rep = enumerate_consistent(&kc, &[], OracleCaps::default()).unwrap();
            let want = brute(&kc);
            assert!(rep.complete);
            assert_eq!(rep.count, want.len() as u64, "seed {seed} k {k}");
            let got: Vec<Edges> = rep.witnesses.iter().map(Graph::edges).collect();
            let cap = OracleCaps::default().witness_cap;
            let want: Vec<Edges> = want.iter().take(cap).map(Graph::edges).collect();
            assert!(got == want, "seed {seed} k {k}: witness lists differ");
        }
    }
}

#[test]
fn filters_count_the_right_subsets() {
    for seed in 0..20 {
        let g = gen_gnp(6, 0.35, 40 + seed).unwrap();
        let kc = extract_ksets(&g, 3).unwrap();
        let all = brute(&kc);
        let rep = enumerate_consistent(&kc, &[ClassPredicate::Connected, ClassPredicate::TriangleFree], OracleCaps::default())
            .unwrap();
        assert_eq!(rep.total, all.len() as u64);
        let both = all.iter().filter(|h| h.is_connected() && !has_triangle(h)).count();
        assert_eq!(rep.count, both as u64, "seed {seed}");
        assert_eq!(rep.class_counts[0].1, all.iter().filter(|h| h.is_connected()).count() as u64);
        assert_eq!(rep.class_counts[1].1, all.iter().filter(|h| !has_triangle(h)).count() as u64);
    }
}

#[test]
fn small_tree_ambiguities() {
    // Paths on three and four vertices, and the four-vertex star.
    let p3 = extract_ksets(&Graph::with_edges(3, &[(0, 1), (1, 2)]), 3).unwrap();
    let rep = enumerate_consistent(&p3, &[ClassPredicate::Tree], OracleCaps::default()).unwrap();
    assert_eq!(rep.count, 3);
    let p4 = extract_ksets(&Graph::with_edges(4, &[(0, 1), (1, 2), (2, 3)]), 3).unwrap();
    assert_eq!(enumerate_consistent(&p4, &[ClassPredicate::Tree], OracleCaps::default()).unwrap().count, 2);
    let star = extract_ksets(&Graph::with_edges(4, &[(0, 1), (0, 2), (0, 3)]), 3).unwrap();
    assert_eq!(enumerate_consistent(&star, &[ClassPredicate::Tree], OracleCaps::default()).unwrap().count, 1);
    assert_eq!(enumerate_consistent(&star, &[], OracleCaps::default()).unwrap().count, 4);
}

#[test]
fn ambiguous_families_have_several_graphs() {
    let fams = [
        AmbiguousFamily::CompleteMinusMatching { n: 6, matched: 2 },
        AmbiguousFamily::StarPlusMatching { leaves: 5, matched: 2 },
        AmbiguousFamily::PathWithDominators { dominators: 2 },
    ];
    for f in fams {
        let g = gen_ambiguous_family(f).unwrap();
        let rep = enumerate_consistent(&extract_ksets(&g, 3).unwrap(), &[], OracleCaps::default()).unwrap();
        assert!(rep.count >= 2, "{f:?}");
        assert!(rep.witnesses.iter().any(|w| w.edges() == g.edges()));
    }
    let (path, tri) = gen_caveat_pair(3).unwrap();
    assert_eq!(extract_ksets(&path, 3).unwrap(), extract_ksets(&tri, 3).unwrap());
    assert_ne!(path.edges(), tri.edges());
}

#[test]
fn budget_marks_report_partial() {
    let kc = extract_ksets(&gen_complete(8), 3).unwrap();
    let rep = enumerate_consistent(&kc, &[], OracleCaps { node_budget: 50, ..OracleCaps::default() }).unwrap();
    assert!(!rep.complete);
    assert!(rep.to_text().contains("partial"));
    let big = extract_ksets(&gen_complete(9), 3).unwrap();
    assert!(enumerate_consistent(&big, &[], OracleCaps::default()).is_err());
}

#[test]
fn predicates_against_definitions() {
    for n in 3..=6 {
        for m in 0u64..1 << pairs(n).len() {
            let g = graph_of(n, m);
            assert_eq!(is_tree(&g), g.is_connected() && g.edge_count() == n - 1);
            assert_eq!(is_triangle_free(&g), !has_triangle(&g));
            assert_eq!(girth(&g) == Some(3), has_triangle(&g));
        }
    }
    assert_eq!(girth(&gen_petersen()), Some(5));
    assert_eq!(girth(&gen_cycle(9).unwrap()), Some(9));
    assert_eq!(girth(&gen_tree(12, 1).unwrap()), None);
    assert!(all_trees(6).iter().all(is_tree));
    assert_eq!(all_trees(6).len(), 1296);
}

#[test]
fn planarity_predicates_on_known_graphs() {
    for seed in 0..10 {
        let g = gen_cycle_chords(9, 3, seed).unwrap();
        assert!(is_outerplanar_2connected(&g).unwrap());
        assert!(is_maximal_planar(&gen_apollonian(5, seed)).unwrap());
    }
    assert!(is_maximal_planar(&gen_icosahedron()).is_err());
    assert!(is_maximal_planar(&gen_octahedron()).unwrap());
    assert!(is_maximal_planar(&gen_bipyramid(5).unwrap()).unwrap());
    assert!(!is_outerplanar_2connected(&gen_octahedron()).unwrap());
    assert!(!is_maximal_planar(&gen_complete(5)).unwrap());
    assert!(!is_outerplanar_2connected(&gen_complete(4)).unwrap());
}

#[test]
fn generators_are_deterministic_and_labelled() {
    assert_eq!(gen_gnp(20, 0.5, 7).unwrap(), gen_gnp(20, 0.5, 7).unwrap());
    assert_eq!(gen_tree(30, 2).unwrap(), gen_tree(30, 2).unwrap());
    let p = gen_petersen();
    let s = shuffled(&p, 3);
    assert_eq!(s.edge_count(), 15);
    assert_eq!(girth(&s), Some(5));
    let degrees: BTreeSet<usize> = (0..10).map(|v| s.degree(v)).collect();
    assert_eq!(degrees, [3].into());
}
