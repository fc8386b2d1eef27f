//! Linear-time 2-SAT via strongly connected components of the implication graph.

use super::formula::{Formula2Sat, Lit};

/// Satisfying assignment indexed by variable, or `None` when unsatisfiable.
pub fn solve_2sat(f: &Formula2Sat) -> Option<Vec<bool>> {
    solve_with(f, &[])
}

/// Solves with extra unit literals forced true.
///
/// Tie-breaking is fixed: among free variables the solver prefers false,
/// so the empty formula yields the all-false assignment.
pub fn solve_with(f: &Formula2Sat, assume: &[Lit]) -> Option<Vec<bool>> {
    let pairs = f.clauses().iter().map(|c| (c.a, c.b));
    solve_clauses(f.num_vars(), pairs, assume)
}

/// Core solver over raw clauses `(a or b)`.
pub fn solve_clauses(
    num_vars: usize,
    clauses: impl Iterator<Item = (Lit, Lit)> + Clone,
    assume: &[Lit],
) -> Option<Vec<bool>> {
    let nodes = 2 * num_vars;
    let mut deg = vec![0u32; nodes + 1];
    for (a, b) in clauses.clone() {
        deg[a.negate().0 as usize] += 1;
        deg[b.negate().0 as usize] += 1;
    }
    for l in assume {
        deg[l.negate().0 as usize] += 1;
    }
    let mut start = vec![0usize; nodes + 1];
    for v in 0..nodes {
        start[v + 1] = start[v] + deg[v] as usize;
    }
    let mut fill = start.clone();
    let mut adj = vec![0u32; start[nodes]];
    let mut push = |from: Lit, to: Lit| {
        adj[fill[from.0 as usize]] = to.0;
        fill[from.0 as usize] += 1;
    };
    for (a, b) in clauses {
        push(a.negate(), b);
        push(b.negate(), a);
    }
    for &l in assume {
        push(l.negate(), l);
    }
    let comp = tarjan(nodes, &start, &adj);
    let mut out = Vec::with_capacity(num_vars);
    for v in 0..num_vars {
        let (p, n) = (comp[2 * v], comp[2 * v + 1]);
        if p == n {
            return None;
        }
        // Components are numbered in reverse topological order.
        out.push(p < n);
    }
    Some(out)
}

/// Iterative Tarjan. Roots are visited negated-literal first (node `2v+1`
/// before `2v`), which is what makes free variables come out false.
fn tarjan(nodes: usize, start: &[usize], adj: &[u32]) -> Vec<u32> {
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; nodes];
    let mut low = vec![0u32; nodes];
    let mut comp = vec![UNSEEN; nodes];
    let mut on_stack = vec![false; nodes];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut comps = 0u32;
    let roots = (0..nodes / 2).flat_map(|v| [2 * v + 1, 2 * v]);
    for root in roots {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root as u32, start[root]));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            let v = v as usize;
            if *edge < start[v + 1] {
                let w = adj[*edge] as usize;
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    call.push((w as u32, start[w]));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let p = parent as usize;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack") as usize;
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(num_vars: usize, clauses: &[(Lit, Lit)]) -> bool {
        (0u32..1 << num_vars).any(|m| {
            let val = |l: Lit| (m >> l.var() & 1 == 1) != l.is_neg();
            clauses.iter().all(|&(a, b)| val(a) || val(b))
        })
    }

    #[test]
    fn empty_formula_is_all_false() {
        assert_eq!(solve_clauses(3, std::iter::empty(), &[]), Some(vec![false; 3]));
    }

    #[test]
    fn contradiction_is_unsat() {
        let x = Lit::pos(0);
        let cl = [(x, x), (x.negate(), x.negate())];
        assert_eq!(solve_clauses(1, cl.iter().copied(), &[]), None);
    }

    #[test]
    fn assumptions_force_values() {
        let cl = [(Lit::neg(0), Lit::pos(1))];
        let sol = solve_clauses(2, cl.iter().copied(), &[Lit::pos(0)]).unwrap();
        assert_eq!(sol, vec![true, true]);
        assert_eq!(solve_clauses(2, cl.iter().copied(), &[Lit::pos(0), Lit::neg(1)]), None);
    }

    #[test]
    fn agrees_with_brute_force_on_random_formulas() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let nv = rng.gen_range(1..=6);
            let nc = rng.gen_range(0..=12);
            let cl: Vec<(Lit, Lit)> = (0..nc)
                .map(|_| (Lit(rng.gen_range(0..2 * nv as u32)), Lit(rng.gen_range(0..2 * nv as u32))))
                .collect();
            let got = solve_clauses(nv, cl.iter().copied(), &[]);
            assert_eq!(got.is_some(), brute(nv, &cl));
            if let Some(a) = got {
                let val = |l: Lit| a[l.var() as usize] != l.is_neg();
                assert!(cl.iter().all(|&(x, y)| val(x) || val(y)));
            }
        }
    }
}
