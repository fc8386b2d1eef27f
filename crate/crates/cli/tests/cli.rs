use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;
use triples::io::{parse_graph, parse_ksets, write_graph};
use triples::oracle::generators::gen_petersen;
use triples::{extract_ksets, DuplicatePolicy};

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn triples(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_triples")).args(args).output().expect("binary runs");
    Run {
        status: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8"),
        stderr: String::from_utf8(out.stderr).expect("utf8"),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).expect("write");
    p
}

fn s(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

/// gen, then extract at `k`, saved next to each other.
fn gen_and_extract(dir: &TempDir, tag: &str, gen: &[&str], k: usize) -> (PathBuf, PathBuf) {
    let mut args = vec!["gen"];
    args.extend_from_slice(gen);
    let g = triples(&args);
    assert_eq!(g.status, 0, "{}", g.stderr);
    let gp = file(dir, &format!("{tag}.graph"), &g.stdout);
    let e = triples(&["extract", s(&gp), "--k", &k.to_string()]);
    assert_eq!(e.status, 0, "{}", e.stderr);
    (gp.clone(), file(dir, &format!("{tag}.k{k}"), &e.stdout))
}

#[test]
fn path_five_tree_round_trip() {
    let dir = TempDir::new().unwrap();
    let (gp, kp) = gen_and_extract(&dir, "p5", &["--family", "path", "--n", "5"], 3);
    let kc = parse_ksets(&std::fs::read_to_string(&kp).unwrap(), DuplicatePolicy::Strict).unwrap();
    assert_eq!(kc.len(), 3);
    let r = triples(&["reconstruct", s(&kp), "--class", "tree"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout, std::fs::read_to_string(gp).unwrap());
}

#[test]
fn disjoint_looking_triples_are_inconsistent() {
    let dir = TempDir::new().unwrap();
    let kp = file(&dir, "t.k", "k 3\nvertices: a b c d e\na b c\nc d e\n");
    let r = triples(&["reconstruct", s(&kp)]);
    assert_eq!(r.status, 1);
    assert!(r.stdout.contains("inconsistent"));
}

#[test]
fn four_path_triples_give_two_tree_witnesses() {
    let dir = TempDir::new().unwrap();
    let kp = file(&dir, "t.k", "k 3\nvertices: a b c d\na b c\nb c d\n");
    let r = triples(&["reconstruct", s(&kp), "--class", "tree"]);
    assert_eq!(r.status, 2);
    assert_eq!(r.stdout.matches("# witness").count(), 2);
    assert_eq!(r.stdout.matches("vertices:").count(), 2);
}

#[test]
fn verify_random_tree_fifty() {
    let dir = TempDir::new().unwrap();
    for seed in ["1", "2", "3"] {
        let g = triples(&["gen", "--family", "tree", "--n", "50", "--seed", seed]);
        let gp = file(&dir, &format!("t{seed}.graph"), &g.stdout);
        let r = triples(&["verify", s(&gp), "--k", "3", "--class", "tree"]);
        assert_eq!(r.status, 0, "seed {seed}: {}{}", r.stdout, r.stderr);
        assert_eq!(r.stdout, "identical\n");
    }
}

#[test]
fn extract_k2_is_the_edge_list() {
    let dir = TempDir::new().unwrap();
    let (gp, kp) = gen_and_extract(&dir, "pet", &["--family", "petersen"], 2);
    let g = parse_graph(&std::fs::read_to_string(gp).unwrap()).unwrap();
    let kc = parse_ksets(&std::fs::read_to_string(kp).unwrap(), DuplicatePolicy::Strict).unwrap();
    let sets: Vec<(u32, u32)> = kc.iter().map(|s| (s[0] as u32, s[1] as u32)).collect();
    let edges: Vec<(u32, u32)> = g.edges().into_iter().map(|(u, v)| (u as u32, v as u32)).collect();
    assert_eq!(sets, edges);
}

#[test]
fn extract_matches_library() {
    let dir = TempDir::new().unwrap();
    let gp = file(&dir, "pet.graph", &write_graph(&gen_petersen()));
    let r = triples(&["extract", s(&gp), "--k", "4"]);
    assert_eq!(r.status, 0);
    let kc = parse_ksets(&r.stdout, DuplicatePolicy::Strict).unwrap();
    assert_eq!(kc, extract_ksets(&gen_petersen(), 4).unwrap());
}

#[test]
fn join_pair_shares_larger_sets() {
    let dir = TempDir::new().unwrap();
    let (_, a) = gen_and_extract(&dir, "a", &["--family", "infmany", "--k", "3", "--n", "6"], 4);
    let (_, b) = gen_and_extract(&dir, "b", &["--family", "infmany-twin", "--k", "3", "--n", "6"], 4);
    assert_eq!(std::fs::read_to_string(a).unwrap(), std::fs::read_to_string(b).unwrap());
    let g = triples(&["gen", "--family", "infmany", "--k", "3", "--n", "6"]);
    assert_eq!(parse_graph(&g.stdout).unwrap().n(), 12);
}

#[test]
fn star_plus_matching_is_not_unique() {
    let dir = TempDir::new().unwrap();
    let (_, kp) = gen_and_extract(&dir, "spm", &["--family", "star-plus-matching", "--n", "6", "--extra", "2"], 3);
    let r = triples(&["check-unique", s(&kp)]);
    assert_eq!(r.status, 2, "{}", r.stderr);
    assert!(r.stdout.starts_with("not unique"));
}

#[test]
fn class_pipelines_round_trip() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&[&str], usize, &str)] = &[
        (&["--family", "cycle", "--n", "9"], 3, "triangle-free"),
        (&["--family", "cycle-chords", "--n", "12", "--extra", "4", "--seed", "3"], 3, "outerplanar2c"),
        (&["--family", "icosahedron"], 3, "max-planar"),
        (&["--family", "apollonian", "--n", "20", "--seed", "5"], 3, "max-planar"),
        (&["--family", "tree", "--n", "15", "--seed", "8"], 5, "tree-ksets"),
        (&["--family", "petersen"], 4, "girth-gt-k"),
        (&["--family", "cycle", "--n", "11"], 5, "girth-gt-5"),
        (&["--family", "gnp", "--n", "7", "--seed", "2"], 3, "any"),
    ];
    for (i, (gen, k, class)) in cases.iter().enumerate() {
        let (gp, kp) = gen_and_extract(&dir, &format!("c{i}"), gen, *k);
        let r = triples(&["reconstruct", s(&kp), "--class", class]);
        assert_eq!(r.status, 0, "{class}: {}{}", r.stdout, r.stderr);
        let want = parse_graph(&std::fs::read_to_string(&gp).unwrap()).unwrap();
        assert_eq!(parse_graph(&r.stdout).unwrap().edges(), want.edges(), "{class}");
    }
}

#[test]
fn tree_ksets_above_threshold_is_ambiguous() {
    let dir = TempDir::new().unwrap();
    let (_, kp) = gen_and_extract(&dir, "p6", &["--family", "path", "--n", "6"], 4);
    let r = triples(&["reconstruct", s(&kp), "--class", "tree-ksets"]);
    assert_eq!(r.status, 2);
    let (_, kp) = gen_and_extract(&dir, "p10", &["--family", "path", "--n", "10"], 6);
    assert_eq!(triples(&["reconstruct", s(&kp), "--class", "tree-ksets"]).status, 3);
}

#[test]
fn usage_errors_exit_three() {
    let dir = TempDir::new().unwrap();
    let (_, kp) = gen_and_extract(&dir, "c", &["--family", "cycle", "--n", "8"], 4);
    for class in ["tree", "triangle-free", "outerplanar2c", "max-planar", "any"] {
        assert_eq!(triples(&["reconstruct", s(&kp), "--class", class]).status, 3, "{class}");
    }
    assert_eq!(triples(&["reconstruct", s(&kp), "--class", "girth-gt-5"]).status, 3);
    let bad = file(&dir, "bad.k", "k 3\nvertices: a b c\na b\n");
    assert_eq!(triples(&["reconstruct", s(&bad)]).status, 3);
    assert_eq!(triples(&["reconstruct", "/nonexistent/file"]).status, 3);
    assert_ne!(triples(&["reconstruct", s(&kp), "--class", "bogus"]).status, 0);
}

#[test]
fn enumerate_reports_and_marks_partial() {
    let dir = TempDir::new().unwrap();
    let kp = file(&dir, "t.k", "k 3\nvertices: a b c d\na b c\nb c d\n");
    let r = triples(&["enumerate", s(&kp), "--filter", "tree,connected"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.starts_with("count 2\n"), "{}", r.stdout);
    let (_, kp) = gen_and_extract(&dir, "k8", &["--family", "complete", "--n", "8"], 3);
    let r = triples(&["enumerate", s(&kp), "--node-budget", "100"]);
    assert_eq!(r.status, 4);
    assert!(r.stdout.contains("partial"));
}

#[test]
fn dimacs_has_a_header() {
    let dir = TempDir::new().unwrap();
    let (_, kp) = gen_and_extract(&dir, "c", &["--family", "cycle", "--n", "6"], 3);
    let full = triples(&["dimacs", s(&kp), "--full"]);
    assert_eq!(full.status, 0);
    assert!(full.stdout.lines().any(|l| l.starts_with("p cnf 15 ")), "{}", full.stdout);
    assert!(triples(&["dimacs", s(&kp)]).stdout.contains("p cnf"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = triples(&["gen", "--family", "gnp", "--n", "24", "--seed", "9", "--shuffle"]).stdout;
    assert_eq!(a, triples(&["gen", "--family", "gnp", "--n", "24", "--seed", "9", "--shuffle"]).stdout);
    let gp = file(&dir, "g.graph", &a);
    let e1 = triples(&["extract", s(&gp), "--k", "4"]).stdout;
    assert_eq!(e1, triples(&["extract", s(&gp), "--k", "4"]).stdout);
    let kp = file(&dir, "g.k", &e1);
    let r1 = triples(&["reconstruct", s(&kp), "--class", "random-like", "--jobs", "2"]);
    let r2 = triples(&["reconstruct", s(&kp), "--class", "random-like", "--jobs", "2"]);
    assert_eq!((r1.status, r1.stdout), (r2.status, r2.stdout));
    let h1 = triples(&["reconstruct", s(&kp), "--class", "random-like", "--index", "hashed", "--seed", "4"]);
    let h2 = triples(&["reconstruct", s(&kp), "--class", "random-like", "--index", "hashed", "--seed", "4"]);
    assert_eq!(h1.stdout, h2.stdout);
}
