//! Consistent-graph search and uniqueness on top of the pruned formula.

use std::collections::BTreeSet;

use super::formula::{build_pruned_formula, Formula2Sat, Lit};
use super::solver::{solve_2sat, solve_with};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::kset::KSetCollection;
use crate::result::{reextracts_to, ReconstructionResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SatOptions {
    /// Worker threads for flip tests.
    pub jobs: usize,
    /// Solver calls allowed during solution enumeration.
    pub budget: u64,
    /// Most witnesses kept in a report.
    pub witness_cap: usize,
}

impl Default for SatOptions {
    fn default() -> Self {
        Self { jobs: 1, budget: 1_000_000, witness_cap: 16 }
    }
}

/// Outcome of a uniqueness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub consistent: bool,
    pub unique: bool,
    /// Distinct consistent graphs actually found.
    pub solution_count_lower_bound: u64,
    /// First witness is the primary solution.
    pub witnesses: Vec<Graph>,
}

impl UniquenessReport {
    fn inconsistent() -> Self {
        Self { consistent: false, unique: false, solution_count_lower_bound: 0, witnesses: Vec::new() }
    }
}

fn to_graph(f: &Formula2Sat, sol: &[bool]) -> Graph {
    let mut g = Graph::new(f.labels().clone());
    for (v, &on) in f.vars().iter().zip(sol) {
        if on {
            g.add_edge(v.i, v.j);
        }
    }
    g
}

fn assert_consistent(g: &Graph, t: &KSetCollection) -> Result<()> {
    assert!(reextracts_to(g, t)?, "2-SAT solution does not reproduce the input triples");
    Ok(())
}

/// Vertices lying in no triple. Any matching among them can be added to a
/// solution without changing the triples, so two of them break uniqueness.
fn uncovered(t: &KSetCollection) -> Vec<Vertex> {
    t.occurrences()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(v, _)| v as Vertex)
        .collect()
}

/// Flip test for every materialized variable; returns alternative solutions
/// in variable order.
fn flip_solutions(f: &Formula2Sat, sol: &[bool], jobs: usize) -> Vec<Vec<bool>> {
    let vars: Vec<u32> = (0..f.num_vars() as u32).collect();
    let flip = |v: u32| solve_with(f, &[Lit::with_value(v, !sol[v as usize])]);
    let found: Vec<Option<Vec<bool>>> = if jobs <= 1 || vars.len() < 64 {
        vars.iter().map(|&v| flip(v)).collect()
    } else {
        let chunk = vars.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = vars
                .chunks(chunk)
                .map(|c| s.spawn(move || c.iter().map(|&v| flip(v)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("flip worker")).collect()
        })
    };
    let mut seen = BTreeSet::new();
    found.into_iter().flatten().filter(|s| seen.insert(s.clone())).collect()
}

/// Uniqueness over all simple graphs on the universe, connected or not.
pub fn check_unique(t: &KSetCollection, opts: SatOptions) -> Result<UniquenessReport> {
    let f = build_pruned_formula(t)?;
    let Some(sol) = solve_2sat(&f) else {
        return Ok(UniquenessReport::inconsistent());
    };
    let first = to_graph(&f, &sol);
    assert_consistent(&first, t)?;
    let mut witnesses = vec![first.clone()];
    let mut count = 1u64;
    for alt in flip_solutions(&f, &sol, opts.jobs) {
        count += 1;
        if witnesses.len() < opts.witness_cap {
            let g = to_graph(&f, &alt);
            assert_consistent(&g, t)?;
            witnesses.push(g);
        }
    }
    let free = uncovered(t);
    if free.len() >= 2 {
        count += 1;
        if witnesses.len() < opts.witness_cap {
            let mut g = first;
            g.add_edge(free[0], free[1]);
            assert_consistent(&g, t)?;
            witnesses.push(g);
        }
    }
    Ok(UniquenessReport { consistent: true, unique: count == 1, solution_count_lower_bound: count, witnesses })
}

/// Visits every solution of the formula in a fixed order (variables decided
/// in index order, the found value before its flip). Stops when `visit`
/// returns false. Errors when more than `budget` solver calls are needed.
pub fn enumerate_solutions(
    f: &Formula2Sat,
    budget: u64,
    mut visit: impl FnMut(&[bool]) -> bool,
) -> Result<()> {
    let Some(sol) = solve_2sat(f) else {
        return Ok(());
    };
    let mut calls = 1u64;
    let mut assume = Vec::with_capacity(f.num_vars());
    walk(f, &mut assume, sol, &mut calls, budget, &mut visit)?;
    Ok(())
}

fn walk(
    f: &Formula2Sat,
    assume: &mut Vec<Lit>,
    sol: Vec<bool>,
    calls: &mut u64,
    budget: u64,
    visit: &mut impl FnMut(&[bool]) -> bool,
) -> Result<bool> {
    let depth = assume.len();
    if depth == f.num_vars() {
        return Ok(visit(&sol));
    }
    let keep = Lit::with_value(depth as u32, sol[depth]);
    assume.push(keep);
    let go_on = walk(f, assume, sol, calls, budget, visit)?;
    assume.pop();
    if !go_on {
        return Ok(false);
    }
    *calls += 1;
    if *calls > budget {
        return Err(Error::BudgetExceeded { what: "2-SAT solution enumeration", budget });
    }
    assume.push(keep.negate());
    let mut go_on = true;
    if let Some(other) = solve_with(f, assume) {
        go_on = walk(f, assume, other, calls, budget, visit)?;
    }
    assume.pop();
    Ok(go_on)
}

/// Uniqueness among connected graphs only, by budgeted enumeration.
pub fn check_unique_connected(t: &KSetCollection, opts: SatOptions) -> Result<UniquenessReport> {
    let f = build_pruned_formula(t)?;
    let mut witnesses = Vec::new();
    enumerate_solutions(&f, opts.budget, |sol| {
        let g = to_graph(&f, sol);
        if g.is_connected() {
            witnesses.push(g);
        }
        witnesses.len() < 2
    })?;
    for g in &witnesses {
        assert_consistent(g, t)?;
    }
    if witnesses.is_empty() {
        return Ok(UniquenessReport::inconsistent());
    }
    let count = witnesses.len() as u64;
    Ok(UniquenessReport { consistent: true, unique: count == 1, solution_count_lower_bound: count, witnesses })
}

/// Some graph whose triples are exactly `t`, flagged unique only when it is.
///
/// With `require_connected`, solutions are enumerated until connected ones
/// are found, and uniqueness refers to connected graphs.
pub fn reconstruct_any(t: &KSetCollection, require_connected: bool, opts: SatOptions) -> Result<ReconstructionResult> {
    let report = if require_connected {
        check_unique_connected(t, opts)?
    } else {
        check_unique(t, opts)?
    };
    Ok(if !report.consistent {
        let what = if require_connected { "connected graph" } else { "graph" };
        ReconstructionResult::inconsistent(format!("no {what} has exactly these triples"))
    } else if report.unique {
        ReconstructionResult::Unique(report.witnesses.into_iter().next().expect("witness"))
    } else {
        ReconstructionResult::Ambiguous(report.witnesses)
    })
}
