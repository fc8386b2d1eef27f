use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triples::io::{parse_graph, parse_ksets, write_graph, write_ksets};
use triples::oracle::generators::{gen_complete, gen_gnp, gen_path, gen_petersen, gen_star};
use triples::{
    extract_ksets, lift_ksets, sort_ksets, ConnectivityOracle, DuplicatePolicy, Error, Graph, IndexKind, KSet,
    KSetCollection, Vertex,
};

/// Connectivity of `set` in `g` by repeated absorption, no library BFS.
fn connected(g: &Graph, set: &[Vertex]) -> bool {
    let mut seen = vec![set[0]];
    loop {
        let before = seen.len();
        for &v in set {
            if !seen.contains(&v) && seen.iter().any(|&u| g.has_edge(u, v)) {
                seen.push(v);
            }
        }
        if seen.len() == set.len() {
            return true;
        }
        if seen.len() == before {
            return false;
        }
    }
}

/// Connected k-subsets by bitmask enumeration, lexicographic.
fn brute_ksets(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut out: Vec<Vec<Vertex>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n as Vertex).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| connected(g, s))
        .collect();
    out.sort();
    out
}

fn sets(kc: &KSetCollection) -> Vec<Vec<Vertex>> {
    kc.iter().map(<[Vertex]>::to_vec).collect()
}

fn named(names: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::labelled(names, edges).unwrap()
}

fn path_abcde() -> Graph {
    named(&["a", "b", "c", "d", "e"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")])
}

#[test]
fn extract_small_examples() {
    assert_eq!(extract_ksets(&path_abcde(), 3).unwrap().label_sets(), [["a", "b", "c"], ["b", "c", "d"], ["c", "d", "e"]]);
    let star = named(&["a", "b", "c", "d"], &[("a", "d"), ("b", "d"), ("c", "d")]);
    assert_eq!(extract_ksets(&star, 3).unwrap().label_sets(), [["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]);
    let tri = named(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
    assert_eq!(extract_ksets(&tri, 3).unwrap().len(), 1);
}

#[test]
fn extract_agrees_with_brute_force() {
    for seed in 0..40 {
        let n = 5 + (seed as usize % 8);
        let g = gen_gnp(n, 0.35, seed).unwrap();
        for k in 2..=n.min(6) {
            assert_eq!(sets(&extract_ksets(&g, k).unwrap()), brute_ksets(&g, k), "seed {seed} k {k}");
        }
    }
    let p = gen_petersen();
    assert_eq!(sets(&extract_ksets(&p, 5).unwrap()), brute_ksets(&p, 5));
}

#[test]
fn extract_rejects_bad_k() {
    assert!(extract_ksets(&gen_path(4), 1).is_err());
    assert!(extract_ksets(&gen_path(4), 5).is_err());
}

#[test]
fn subset_connectivity() {
    let p = path_abcde();
    let ids = |s: &str| s.chars().map(|c| p.labels().lookup(&c.to_string()).unwrap()).collect::<Vec<_>>();
    assert!(!p.is_connected_subset(&ids("ace")).unwrap());
    assert!(p.is_connected_subset(&ids("bcd")).unwrap());
    for v in 0..5 {
        assert!(p.is_connected_subset(&[v]).unwrap());
    }
}

#[test]
fn lift_examples() {
    let p = path_abcde();
    let four = lift_ksets(&extract_ksets(&p, 3).unwrap()).unwrap();
    assert_eq!(four, extract_ksets(&p, 4).unwrap());
    assert_eq!(four.len(), 2);
    let tri = gen_complete(3);
    assert!(lift_ksets(&extract_ksets(&tri, 3).unwrap()).is_err());
    let k5 = gen_complete(5);
    assert_eq!(lift_ksets(&extract_ksets(&k5, 3).unwrap()).unwrap().len(), 5);
}

#[test]
fn lift_agrees_with_extract_on_samples() {
    for seed in 0..30 {
        let n = 6 + seed as usize % 6;
        let g = gen_gnp(n, 0.3, 100 + seed).unwrap();
        for k in 2..n.min(7) {
            let up = lift_ksets(&extract_ksets(&g, k).unwrap()).unwrap();
            assert_eq!(sets(&up), brute_ksets(&g, k + 1), "seed {seed} k {k}");
        }
    }
}

#[test]
fn connectivity_oracle_answers_every_size() {
    let g = gen_gnp(9, 0.3, 4).unwrap();
    let kc = extract_ksets(&g, 3).unwrap();
    let o = ConnectivityOracle::new(&kc).unwrap();
    for m in 1u32..1 << 9 {
        let s: Vec<Vertex> = (0..9).filter(|&v| m >> v & 1 == 1).collect();
        if s.len() >= 3 {
            assert_eq!(o.query_connected(&s).unwrap(), connected(&g, &s), "{s:?}");
        }
    }
}

#[test]
fn sort_examples() {
    let mk = |v: &[Vertex]| KSet::new(v.to_vec()).unwrap();
    let (sorted, _) = sort_ksets(vec![mk(&[1, 2, 3]), mk(&[0, 1, 2]), mk(&[0, 1, 3])], 4);
    assert_eq!(sorted, vec![mk(&[0, 1, 2]), mk(&[0, 1, 3]), mk(&[1, 2, 3])]);
    let (again, _) = sort_ksets(sorted.clone(), 4);
    assert_eq!(again, sorted);
}

#[test]
fn sort_matches_comparison_sort_at_scale() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 200;
    let input: Vec<KSet> = (0..100_000)
        .map(|_| {
            let mut v: Vec<Vertex> = (0..n as Vertex).collect::<Vec<_>>().choose_multiple(&mut rng, 3).copied().collect();
            v.shuffle(&mut rng);
            KSet::new(v).unwrap()
        })
        .collect();
    let mut want = input.clone();
    want.sort();
    let (got, stats) = sort_ksets(input, n);
    assert_eq!(got, want);
    assert_eq!(stats.passes, 3);
}

#[test]
fn membership_indexes_agree() {
    let g = gen_gnp(14, 0.3, 8).unwrap();
    let sorted = extract_ksets(&g, 4).unwrap();
    let hashed = sorted.clone().with_index(IndexKind::Hashed { seed: 3 });
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3000 {
        let mut s: Vec<Vertex> = (0..14).collect::<Vec<_>>().choose_multiple(&mut rng, 4).copied().collect();
        s.sort_unstable();
        assert_eq!(sorted.contains(&s), connected(&g, &s));
        assert_eq!(hashed.contains(&s), sorted.contains(&s));
    }
}

#[test]
fn duplicate_policy() {
    let text = "k 3\nvertices: a b c d\na b c\nc b a\n";
    assert!(matches!(parse_ksets(text, DuplicatePolicy::Strict), Err(Error::DuplicateSet(_))));
    assert_eq!(parse_ksets(text, DuplicatePolicy::Lenient).unwrap().len(), 1);
}

#[test]
fn parse_errors_carry_line_numbers() {
    assert!(matches!(parse_ksets("k 3\nvertices: a b c\na b z\n", DuplicatePolicy::Strict), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_ksets("k x\n", DuplicatePolicy::Strict), Err(Error::Parse { line: 1, .. })));
    assert!(parse_graph("a a\n").is_err());
    assert!(parse_graph("vertices: a b\na c\n").is_err());
}

#[test]
fn graph_file_without_header_interns_labels() {
    let g = parse_graph("# comment\nx y\ny z\n").unwrap();
    assert_eq!(g.n(), 3);
    assert_eq!(g.edge_labels(), [("x".to_string(), "y".to_string()), ("y".to_string(), "z".to_string())]);
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..12, any::<u64>(), 0.1f64..0.9).prop_map(|(n, seed, p)| gen_gnp(n, p, seed).unwrap())
}

proptest! {
    #[test]
    fn graph_text_round_trips(g in small_graph()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn kset_text_round_trips(g in small_graph(), k in 2usize..5) {
        prop_assume!(k <= g.n());
        let kc = extract_ksets(&g, k).unwrap();
        prop_assert_eq!(parse_ksets(&write_ksets(&kc), DuplicatePolicy::Strict).unwrap(), kc);
    }

    #[test]
    fn extraction_is_relabelling_invariant(g in small_graph(), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permuted(&perm);
        let k = 3.min(n);
        prop_assume!(k >= 2);
        let mut mapped: Vec<Vec<Vertex>> = extract_ksets(&g, k).unwrap().iter()
            .map(|s| { let mut t: Vec<Vertex> = s.iter().map(|&v| perm[v as usize]).collect(); t.sort(); t })
            .collect();
        mapped.sort();
        prop_assert_eq!(sets(&extract_ksets(&h, k).unwrap()), mapped);
    }

    #[test]
    fn star_triples_all_hold_the_centre(n in 3usize..30) {
        let kc = extract_ksets(&gen_star(n), 3).unwrap();
        prop_assert_eq!(kc.len(), (n - 1) * (n - 2) / 2);
        prop_assert!(kc.iter().all(|s| s.contains(&0)));
    }

    #[test]
    fn random_sets_connected_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..14);
        let g = gen_gnp(n, 0.4, seed).unwrap();
        let size = rng.gen_range(1..=n);
        let s: Vec<Vertex> = (0..n as Vertex).collect::<Vec<_>>().choose_multiple(&mut rng, size).copied().collect();
        prop_assert_eq!(g.is_connected_subset(&s).unwrap(), connected(&g, &s));
    }
}
