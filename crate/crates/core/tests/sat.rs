use std::collections::BTreeSet;

use proptest::prelude::*;
use triples::oracle::generators::{gen_gnp, gen_path, gen_tree};
use triples::sat::{
    build_full_formula, build_pruned_formula, check_unique, check_unique_connected, enumerate_solutions,
    reconstruct_any, solve_2sat, solve_clauses, ClauseKind, Formula2Sat, Lit, SatOptions,
};
use triples::{extract_ksets, DuplicatePolicy, Graph, KSetCollection, Labels, ReconstructionResult, Vertex};

type Edges = BTreeSet<(Vertex, Vertex)>;

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    let n = n as Vertex;
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn triples_of(names: &str, sets: &[&str]) -> KSetCollection {
    let labels = Labels::from_names(names.chars().map(String::from)).unwrap();
    let sets = sets.iter().map(|s| s.chars().map(|c| labels.lookup(&c.to_string()).unwrap()).collect()).collect();
    KSetCollection::from_sets(3, labels, sets, DuplicatePolicy::Strict).unwrap()
}

/// Every graph on the universe with exactly these triples, by trying all edge sets.
fn brute_solutions(t: &KSetCollection) -> BTreeSet<Edges> {
    let all = pairs(t.n());
    let mut out = BTreeSet::new();
    for m in 0u64..1 << all.len() {
        let edges: Vec<_> = all.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(t.labels().clone(), &edges).unwrap();
        if extract_ksets(&g, 3).unwrap() == *t {
            out.insert(edges.into_iter().collect());
        }
    }
    out
}

fn formula_solutions(f: &Formula2Sat) -> BTreeSet<Edges> {
    let mut out = BTreeSet::new();
    enumerate_solutions(f, u64::MAX, |sol| {
        out.insert(f.vars().iter().zip(sol).filter(|(_, &on)| on).map(|(v, _)| (v.i, v.j)).collect());
        true
    })
    .unwrap();
    out
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let all = pairs(n);
    (0u64..1 << all.len()).map(move |m| {
        let edges: Vec<_> = all.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &e)| e).collect();
        Graph::with_edges(n, &edges)
    })
}

#[test]
fn full_formula_clause_counts() {
    let f = build_full_formula(&triples_of("abc", &["abc"])).unwrap();
    assert_eq!((f.count(ClauseKind::PositiveTriple), f.count(ClauseKind::NegativeTriple)), (3, 0));
    let f = build_full_formula(&triples_of("abcd", &["abc", "bcd"])).unwrap();
    assert_eq!((f.count(ClauseKind::PositiveTriple), f.count(ClauseKind::NegativeTriple)), (6, 6));
    let f = build_full_formula(&triples_of("abcde", &["abc", "bcd", "cde"])).unwrap();
    assert_eq!((f.count(ClauseKind::PositiveTriple), f.count(ClauseKind::NegativeTriple)), (9, 21));
}

#[test]
fn pruned_formula_examples() {
    let path = triples_of("abcde", &["abc", "bcd", "cde"]);
    let pruned = formula_solutions(&build_pruned_formula(&path).unwrap());
    assert_eq!(pruned, formula_solutions(&build_full_formula(&path).unwrap()));
    assert_eq!(pruned.len(), 1);
    let lone = triples_of("abcde", &["abc"]);
    assert_eq!(build_pruned_formula(&lone).unwrap().count(ClauseKind::NegativeTriple), 0);
    // Centre d: the star plus at most one of ab, ac, bc.
    let star = triples_of("abcd", &["abd", "acd", "bcd"]);
    let sols = formula_solutions(&build_pruned_formula(&star).unwrap());
    assert_eq!(sols.len(), 4);
    let spokes: Edges = [(0, 3), (1, 3), (2, 3)].into();
    assert!(sols.iter().all(|s| s.is_superset(&spokes) && s.len() <= 4));
}

#[test]
fn solver_basics() {
    assert_eq!(solve_clauses(3, std::iter::empty(), &[]), Some(vec![false; 3]));
    let contradiction = [(Lit::pos(0), Lit::pos(0)), (Lit::neg(0), Lit::neg(0))];
    assert_eq!(solve_clauses(1, contradiction.iter().copied(), &[]), None);
    assert!(solve_2sat(&build_pruned_formula(&triples_of("abcde", &["abc", "cde"])).unwrap()).is_none());
}

#[test]
fn small_known_instances() {
    let opts = SatOptions::default();
    let path = triples_of("abcde", &["abc", "bcd", "cde"]);
    let res = reconstruct_any(&path, true, opts).unwrap();
    assert_eq!(res.unique().unwrap().edges(), gen_path(5).edges());
    assert!(reconstruct_any(&triples_of("abcde", &["abc", "cde"]), false, opts).unwrap().is_inconsistent());
    let fig = triples_of("abcd", &["abc", "bcd"]);
    assert!(matches!(reconstruct_any(&fig, true, opts).unwrap(), ReconstructionResult::Ambiguous(_)));
    assert!(check_unique(&path, opts).unwrap().unique);
    let star = check_unique(&triples_of("abcd", &["abd", "acd", "bcd"]), opts).unwrap();
    assert!(!star.unique && star.witnesses.len() >= 2);
    let single = check_unique(&triples_of("abc", &["abc"]), opts).unwrap();
    assert!(!single.unique);
}

/// Formula solutions, and uniqueness, against the exhaustive search for
/// every graph on up to five vertices.
#[test]
fn formulas_match_exhaustive_search_small() {
    for n in 3..=5 {
        let mut seen = BTreeSet::new();
        for g in all_graphs(n) {
            let t = extract_ksets(&g, 3).unwrap();
            if !seen.insert(t.iter().map(<[Vertex]>::to_vec).collect::<Vec<_>>()) {
                continue;
            }
            let want = brute_solutions(&t);
            assert_eq!(formula_solutions(&build_full_formula(&t).unwrap()), want, "{:?}", g.edges());
            let report = check_unique(&t, SatOptions::default()).unwrap();
            assert!(report.consistent);
            assert_eq!(report.unique, want.len() == 1, "{:?}", g.edges());
            assert!(report.solution_count_lower_bound <= want.len() as u64);
            for w in &report.witnesses {
                assert!(want.contains(&w.edges().into_iter().collect::<Edges>()));
            }
        }
    }
}

/// Uncovered vertices: the pruned formula leaves them isolated and the full
/// one adds any matching among them.
#[test]
fn pruned_equals_full_up_to_uncovered_matchings() {
    for seed in 0..60 {
        let n = 4 + seed as usize % 3;
        let g = gen_gnp(n, 0.35, seed).unwrap();
        let t = extract_ksets(&g, 3).unwrap();
        let full = formula_solutions(&build_full_formula(&t).unwrap());
        let pruned = formula_solutions(&build_pruned_formula(&t).unwrap());
        let free: Vec<Vertex> = t.occurrences().iter().enumerate().filter(|(_, &c)| c == 0).map(|(v, _)| v as Vertex).collect();
        let free_pairs: Vec<(Vertex, Vertex)> =
            pairs(free.len()).into_iter().map(|(a, b)| (free[a as usize], free[b as usize])).collect();
        let mut extended = BTreeSet::new();
        for base in &pruned {
            for m in 0u32..1 << free_pairs.len() {
                let chosen: Vec<_> = free_pairs.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &e)| e).collect();
                let mut ends: Vec<Vertex> = chosen.iter().flat_map(|&(a, b)| [a, b]).collect();
                ends.sort_unstable();
                if ends.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                extended.insert(base.iter().copied().chain(chosen).collect::<Edges>());
            }
        }
        assert_eq!(full, extended, "seed {seed}");
        if free.is_empty() {
            assert_eq!(full, pruned);
        }
    }
}

#[test]
fn connected_uniqueness_against_exhaustive_search() {
    for seed in 0..40 {
        let g = gen_gnp(6, 0.45, 500 + seed).unwrap();
        let t = extract_ksets(&g, 3).unwrap();
        let connected: Vec<Edges> = brute_solutions(&t)
            .into_iter()
            .filter(|e| Graph::with_edges(6, &e.iter().copied().collect::<Vec<_>>()).is_connected())
            .collect();
        let rep = check_unique_connected(&t, SatOptions::default()).unwrap();
        assert_eq!(rep.consistent, !connected.is_empty(), "seed {seed}");
        assert_eq!(rep.unique, connected.len() == 1, "seed {seed}");
    }
}

#[test]
fn enumeration_budget_is_enforced() {
    let t = extract_ksets(&Graph::with_edges(8, &pairs(8)), 3).unwrap();
    let f = build_pruned_formula(&t).unwrap();
    assert!(enumerate_solutions(&f, 3, |_| true).is_err());
    let rep = check_unique_connected(&t, SatOptions { budget: 1_000, ..SatOptions::default() });
    assert!(rep.is_ok());
}

#[test]
fn wrong_k_is_rejected() {
    let t = extract_ksets(&gen_path(6), 4).unwrap();
    assert!(build_full_formula(&t).is_err());
    assert!(build_pruned_formula(&t).is_err());
}

#[test]
fn parallel_flips_agree() {
    for seed in 0..10 {
        let t = extract_ksets(&gen_gnp(30, 0.15, seed).unwrap(), 3).unwrap();
        let one = check_unique(&t, SatOptions::default()).unwrap();
        let four = check_unique(&t, SatOptions { jobs: 4, ..SatOptions::default() }).unwrap();
        assert_eq!(one, four);
    }
}

proptest! {
    #[test]
    fn any_answer_reproduces_the_triples(n in 3usize..40, seed in any::<u64>(), p in 0.05f64..0.6) {
        let g = gen_gnp(n, p, seed).unwrap();
        let t = extract_ksets(&g, 3).unwrap();
        match reconstruct_any(&t, false, SatOptions::default()).unwrap() {
            ReconstructionResult::Unique(h) => prop_assert_eq!(h.edges(), g.edges()),
            ReconstructionResult::Ambiguous(ws) => {
                prop_assert!(ws.len() >= 2);
                for w in ws {
                    prop_assert_eq!(extract_ksets(&w, 3).unwrap(), t.clone());
                }
            }
            ReconstructionResult::Inconsistent(r) => prop_assert!(false, "{}", r),
        }
    }

    #[test]
    fn pruned_clauses_grow_linearly(n in 5usize..80, seed in any::<u64>()) {
        let t = extract_ksets(&gen_tree(n, seed).unwrap(), 3).unwrap();
        let f = build_pruned_formula(&t).unwrap();
        prop_assert!(f.clauses().len() <= 9 * n * t.len());
    }
}
