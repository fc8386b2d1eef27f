//! Text formats for graphs and k-set collections.
//!
//! Graph file: `#` comments, optional `vertices: l1 l2 ...` header, then one
//! `u v` edge per line. K-set file: `k <int>`, `vertices: ...`, then one set
//! of k labels per line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Labels, Vertex};
use crate::kset::{DuplicatePolicy, KSetCollection};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn header_labels(line: usize, rest: &str) -> Result<Labels> {
    Labels::from_names(rest.split_whitespace()).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text).peekable();
    let mut labels = Labels::new();
    let mut fixed = false;
    if let Some(&(no, first)) = lines.peek() {
        if let Some(rest) = first.strip_prefix("vertices:") {
            labels = header_labels(no, rest)?;
            fixed = true;
            lines.next();
        }
    }
    let mut edges = Vec::new();
    for (no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(no, format!("expected `u v`, found {} token(s)", toks.len())));
        }
        let mut ends = [0 as Vertex; 2];
        for (slot, tok) in ends.iter_mut().zip(&toks) {
            *slot = if fixed {
                labels.get(tok).ok_or_else(|| parse_err(no, format!("label `{tok}` not in header")))?
            } else {
                labels.intern(tok).map_err(|e| parse_err(no, e.to_string()))?
            };
        }
        if ends[0] == ends[1] {
            return Err(parse_err(no, format!("self-loop on `{}`", toks[0])));
        }
        edges.push((ends[0], ends[1]));
    }
    Graph::from_edges(labels, &edges)
}

/// Header plus edges in index order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::from("vertices:");
    for name in g.labels().names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

pub fn parse_ksets(text: &str, policy: DuplicatePolicy) -> Result<KSetCollection> {
    let mut lines = content_lines(text);
    let (no, kline) = lines.next().ok_or_else(|| parse_err(0, "empty k-set file"))?;
    let k: usize = kline
        .strip_prefix('k')
        .filter(|r| r.starts_with(char::is_whitespace))
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| parse_err(no, "expected `k <int>`"))?;
    let (no, vline) = lines.next().ok_or_else(|| parse_err(no, "missing `vertices:` header"))?;
    let rest = vline
        .strip_prefix("vertices:")
        .ok_or_else(|| parse_err(no, "expected `vertices:` header"))?;
    let labels = header_labels(no, rest)?;
    if k < 2 || k > labels.len() {
        return Err(Error::KOutOfRange { k, n: labels.len(), min: 2, max: labels.len() });
    }
    let mut sets = Vec::new();
    for (no, line) in lines {
        let mut set = Vec::with_capacity(k);
        for tok in line.split_whitespace() {
            let v = labels.get(tok).ok_or_else(|| parse_err(no, format!("label `{tok}` not in header")))?;
            if set.contains(&v) {
                return Err(parse_err(no, format!("label `{tok}` repeated in set")));
            }
            set.push(v);
        }
        if set.len() != k {
            return Err(parse_err(no, format!("expected {k} labels, found {}", set.len())));
        }
        sets.push(set);
    }
    KSetCollection::from_sets(k, labels, sets, policy)
}

/// Canonical form: sets sorted, labels inside a set in index order.
pub fn write_ksets(kc: &KSetCollection) -> String {
    let mut out = format!("k {}\nvertices:", kc.k());
    for name in kc.labels().names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for set in kc.label_sets() {
        out.push_str(&set.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kset::extract_ksets;

    #[test]
    fn graph_round_trip_keeps_isolated_vertices() {
        let text = "# demo\nvertices: x y z w\nx y\n\ny z\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degree(3), 0);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn labels_follow_first_appearance_without_header() {
        let g = parse_graph("c a\na b\n").unwrap();
        assert_eq!(g.labels().names(), &["c", "a", "b"]);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        assert!(matches!(parse_graph("a b\nb\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("a a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("vertices: a b\na c\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn kset_file_round_trip() {
        let g = parse_graph("a b\nb c\nc d\nd e\n").unwrap();
        let t = extract_ksets(&g, 3).unwrap();
        let text = write_ksets(&t);
        assert_eq!(text, "k 3\nvertices: a b c d e\na b c\nb c d\nc d e\n");
        assert_eq!(parse_ksets(&text, DuplicatePolicy::Strict).unwrap(), t);
    }

    #[test]
    fn kset_file_canonicalizes_and_checks() {
        let t = parse_ksets("k 3\nvertices: a b c d\nd c b\nc b a\n", DuplicatePolicy::Strict).unwrap();
        assert_eq!(t.label_sets(), vec![vec!["a", "b", "c"], vec!["b", "c", "d"]]);
        let dup = "k 3\nvertices: a b c\na b c\nc b a\n";
        assert!(matches!(parse_ksets(dup, DuplicatePolicy::Strict), Err(Error::DuplicateSet(_))));
        assert_eq!(parse_ksets(dup, DuplicatePolicy::Lenient).unwrap().len(), 1);
        assert!(parse_ksets("k 3\na b c\n", DuplicatePolicy::Strict).is_err());
        assert!(parse_ksets("k 3\nvertices: a b c\na b\n", DuplicatePolicy::Strict).is_err());
        assert!(parse_ksets("k 3\nvertices: a b c\na a b\n", DuplicatePolicy::Strict).is_err());
        assert!(matches!(
            parse_ksets("k 4\nvertices: a b c\n", DuplicatePolicy::Strict),
            Err(Error::KOutOfRange { .. })
        ));
    }
}
