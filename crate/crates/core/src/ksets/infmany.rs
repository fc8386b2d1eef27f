//! Graphs determined by their connected k-sets but not their (k+1)-sets.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A path on `2k` vertices (ids `0..2k`) joined completely to a path on `n`
/// vertices (ids `2k..2k+n`). Needs `k >= 3` and `n >= 2k`.
pub fn gen_infmany(k: usize, n: usize) -> Result<Graph> {
    if k < 3 || n < 2 * k {
        return Err(Error::InvalidParameter(format!("need k >= 3 and n >= 2k, got k={k}, n={n}")));
    }
    let p = 2 * k;
    let total = p + n;
    let mut g = Graph::empty(total);
    for i in 1..p {
        g.add_edge((i - 1) as Vertex, i as Vertex);
    }
    for i in p + 1..total {
        g.add_edge((i - 1) as Vertex, i as Vertex);
    }
    for a in 0..p {
        for b in p..total {
            g.add_edge(a as Vertex, b as Vertex);
        }
    }
    Ok(g)
}

/// The same join with the middle of the short path rearranged; it shares
/// every connected set of size `k + 1` with [`gen_infmany`].
pub fn gen_infmany_twin(k: usize, n: usize) -> Result<Graph> {
    let g = gen_infmany(k, n)?;
    let p = 2 * k as Vertex;
    let mut perm: Vec<Vertex> = (0..g.n() as Vertex).collect();
    perm.swap((p / 2 - 1) as usize, (p / 2) as usize);
    Ok(g.permuted(&perm))
}
