//! `triples`: extract, reconstruct and check connected k-sets from the shell.
//!
//! Exit status: 0 unique or success, 1 inconsistent input, 2 ambiguous
//! (witnesses printed), 3 usage, IO or parse errors, 4 budget exhausted.

mod gen;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::debug;
use triples::io::{parse_graph, parse_ksets, write_graph, write_ksets};
use triples::oracle::{enumerate_consistent, ClassPredicate, OracleCaps};
use triples::sat::{build_full_formula, build_pruned_formula, check_unique, check_unique_connected, SatOptions};
use triples::{
    classes, extract_ksets, ksets, sat, tree, DuplicatePolicy, Error, Graph, IndexKind, KSetCollection,
    ReconstructOptions, ReconstructionResult,
};

const OK: u8 = 0;
const INCONSISTENT: u8 = 1;
const AMBIGUOUS: u8 = 2;
const USAGE: u8 = 3;
const BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "triples", version, about = "Graph reconstruction from connected k-sets")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Seed for generators and hashed indexes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Membership index for k-set lookups.
    #[arg(long, global = true, value_enum, default_value_t = Index::Sorted)]
    index: Index,
    /// Accept repeated sets in input files.
    #[arg(long, global = true)]
    lenient: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Index {
    Sorted,
    Hashed,
}

#[derive(Subcommand)]
enum Command {
    /// Print the connected k-sets of a graph.
    Extract {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Rebuild a graph from a k-set file.
    Reconstruct {
        ksets: PathBuf,
        #[command(flatten)]
        rec: RecArgs,
    },
    /// Decide whether exactly one graph has the given triples.
    CheckUnique {
        ksets: PathBuf,
        /// Count connected graphs only.
        #[arg(long)]
        connected_only: bool,
        /// Solver calls allowed while enumerating.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Brute-force every consistent graph on a small universe.
    Enumerate {
        ksets: PathBuf,
        /// Class filters, comma separated (tree, triangle-free, girth-gt-4, ...).
        #[arg(long, value_delimiter = ',')]
        filter: Vec<String>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Print a generated graph.
    Gen(gen::GenArgs),
    /// Extract, reconstruct under a class, and compare with the input graph.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_parser = parse_class, default_value = "any")]
        class: Class,
    },
    /// Dump the 2-SAT formula of a triple file in DIMACS form.
    Dimacs {
        ksets: PathBuf,
        /// Emit the unpruned formula over all vertex triples.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
struct RecArgs {
    /// any, tree, triangle-free, outerplanar2c, max-planar, tree-ksets, random-like, girth-gt-k
    #[arg(long, value_parser = parse_class, default_value = "any")]
    class: Class,
    /// Re-extract the answer and compare with the input.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    verify: bool,
    /// With class `any`: only connected graphs count.
    #[arg(long)]
    connected_only: bool,
    /// Print the graph as DOT instead of an edge list.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct CapArgs {
    /// Largest universe accepted.
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 50_000_000)]
    node_budget: u64,
    #[arg(long, default_value_t = 64)]
    witness_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Any,
    Tree,
    TriangleFree,
    Outerplanar2c,
    MaxPlanar,
    TreeKsets,
    RandomLike,
    /// `None` takes the girth bound from the input's k.
    GirthGt(Option<usize>),
}

impl Class {
    fn triples_only(self) -> bool {
        matches!(self, Class::Any | Class::Tree | Class::TriangleFree | Class::Outerplanar2c | Class::MaxPlanar)
    }
}

fn parse_class(s: &str) -> Result<Class, String> {
    Ok(match s {
        "any" => Class::Any,
        "tree" => Class::Tree,
        "triangle-free" => Class::TriangleFree,
        "outerplanar2c" => Class::Outerplanar2c,
        "max-planar" => Class::MaxPlanar,
        "tree-ksets" => Class::TreeKsets,
        "random-like" => Class::RandomLike,
        "girth-gt-k" => Class::GirthGt(None),
        _ => match s.strip_prefix("girth-gt-").and_then(|k| k.parse().ok()) {
            Some(k) => Class::GirthGt(Some(k)),
            None => return Err(format!("unknown class `{s}`")),
        },
    })
}

/// Failure carrying its exit status.
struct Fail {
    status: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::BudgetExceeded { .. }) { BUDGET } else { USAGE };
        Fail { status, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { status: USAGE, msg: msg.into() }
}

type Out = Result<(String, u8), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_ksets(path: &Path, g: Global) -> Result<KSetCollection, Fail> {
    let policy = if g.lenient { DuplicatePolicy::Lenient } else { DuplicatePolicy::Strict };
    let kc = parse_ksets(&read(path)?, policy)?;
    Ok(kc.with_index(index_kind(g)))
}

fn index_kind(g: Global) -> IndexKind {
    match g.index {
        Index::Sorted => IndexKind::Sorted,
        Index::Hashed => IndexKind::Hashed { seed: g.seed },
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, status)) => {
            print!("{out}");
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.status)
        }
    }
}

fn run(cli: Cli) -> Out {
    let g = cli.global;
    match cli.cmd {
        Command::Extract { graph, k } => {
            let graph = parse_graph(&read(&graph)?)?;
            if k < 2 || k > graph.n() {
                return Err(usage(format!("k = {k} outside 2..={}", graph.n())));
            }
            Ok((write_ksets(&extract_ksets(&graph, k)?), OK))
        }
        Command::Reconstruct { ksets, rec } => {
            let kc = load_ksets(&ksets, g)?;
            let opts = ReconstructOptions { verify: rec.verify, index: index_kind(g) };
            let res = reconstruct(&kc, rec.class, opts, rec.connected_only, g)?;
            Ok(render(res, rec.dot))
        }
        Command::CheckUnique { ksets, connected_only, budget } => {
            let kc = load_ksets(&ksets, g)?;
            require_triples(&kc)?;
            let opts = SatOptions { jobs: g.jobs, budget, ..SatOptions::default() };
            let report = if connected_only { check_unique_connected(&kc, opts)? } else { check_unique(&kc, opts)? };
            let mut out = String::new();
            let status = if !report.consistent {
                out.push_str("inconsistent\n");
                INCONSISTENT
            } else if report.unique {
                out.push_str("unique\n");
                OK
            } else {
                let _ = writeln!(out, "not unique: at least {} graphs", report.solution_count_lower_bound);
                AMBIGUOUS
            };
            push_witnesses(&mut out, &report.witnesses);
            Ok((out, status))
        }
        Command::Enumerate { ksets, filter, caps } => {
            let kc = load_ksets(&ksets, g)?;
            let filters = filter.iter().map(|f| f.parse::<ClassPredicate>()).collect::<Result<Vec<_>, _>>()?;
            let caps = OracleCaps {
                max_n: caps.max_n,
                node_budget: caps.node_budget,
                witness_cap: caps.witness_cap,
                jobs: g.jobs,
            };
            let report = enumerate_consistent(&kc, &filters, caps)?;
            Ok((report.to_text(), if report.complete { OK } else { BUDGET }))
        }
        Command::Gen(args) => Ok((write_graph(&gen::generate(&args, g.seed)?), OK)),
        Command::Verify { graph, k, class } => {
            let graph = parse_graph(&read(&graph)?)?;
            if k < 2 || k > graph.n() {
                return Err(usage(format!("k = {k} outside 2..={}", graph.n())));
            }
            let kc = extract_ksets(&graph, k)?.with_index(index_kind(g));
            let opts = ReconstructOptions { verify: true, index: index_kind(g) };
            let res = reconstruct(&kc, class, opts, false, g)?;
            Ok(match res {
                ReconstructionResult::Unique(h) if h.edges() == graph.edges() => ("identical\n".into(), OK),
                ReconstructionResult::Unique(h) => {
                    let mut out = "differs: reconstructed another graph with the same sets\n".to_string();
                    push_witnesses(&mut out, &[h]);
                    (out, AMBIGUOUS)
                }
                other => render(other, false),
            })
        }
        Command::Dimacs { ksets, full } => {
            let kc = load_ksets(&ksets, g)?;
            require_triples(&kc)?;
            let f = if full { build_full_formula(&kc)? } else { build_pruned_formula(&kc)? };
            Ok((f.to_dimacs(), OK))
        }
    }
}

fn require_triples(kc: &KSetCollection) -> Result<(), Fail> {
    if kc.k() != 3 {
        return Err(usage(format!("this command needs triples, got k = {}", kc.k())));
    }
    Ok(())
}

fn reconstruct(
    kc: &KSetCollection,
    class: Class,
    opts: ReconstructOptions,
    connected_only: bool,
    g: Global,
) -> Result<ReconstructionResult, Fail> {
    if class.triples_only() && kc.k() != 3 {
        return Err(usage(format!("class {class:?} needs k = 3, got k = {}", kc.k())));
    }
    if connected_only && class != Class::Any {
        return Err(usage("--connected-only applies to class `any` only"));
    }
    debug!("reconstructing n = {} k = {} with {class:?}", kc.n(), kc.k());
    let res = match class {
        Class::Any => {
            let sopts = SatOptions { jobs: g.jobs, ..SatOptions::default() };
            let res = sat::reconstruct_any(kc, connected_only, sopts)?;
            triples::result::apply_verify(res, kc, opts)?
        }
        Class::Tree => tree::reconstruct_tree(kc, opts)?,
        Class::TriangleFree => classes::reconstruct_triangle_free(kc, opts)?,
        Class::Outerplanar2c => classes::reconstruct_outerplanar_2connected(kc, opts)?,
        Class::MaxPlanar => classes::reconstruct_max_planar(kc, opts)?,
        Class::TreeKsets => match ksets::reconstruct_tree_ksets(kc, opts) {
            Err(Error::InfeasibleK { k, n, max_k, mut witnesses }) => {
                if n > ksets::WITNESS_MAX_N {
                    return Err(usage(format!(
                        "k = {k} exceeds {max_k} for n = {n}; trees are not determined and n is too large to search"
                    )));
                }
                match witnesses.len() {
                    0 => ReconstructionResult::inconsistent("no tree has these connected sets"),
                    1 => ReconstructionResult::Unique(witnesses.pop().expect("one")),
                    _ => ReconstructionResult::Ambiguous(witnesses),
                }
            }
            other => other?,
        },
        Class::RandomLike => ksets::reconstruct_random_like(kc, opts, g.jobs)?,
        Class::GirthGt(bound) => {
            if bound.is_some_and(|b| b != kc.k()) {
                return Err(usage(format!("girth bound must equal k = {}", kc.k())));
            }
            ksets::reconstruct_high_girth(kc, opts)?
        }
    };
    Ok(res)
}

fn render(res: ReconstructionResult, dot: bool) -> (String, u8) {
    match res {
        ReconstructionResult::Unique(h) => (if dot { h.to_dot() } else { write_graph(&h) }, OK),
        ReconstructionResult::Ambiguous(ws) => {
            let mut out = format!("# ambiguous: {} witnesses\n", ws.len());
            push_witnesses(&mut out, &ws);
            (out, AMBIGUOUS)
        }
        ReconstructionResult::Inconsistent(reason) => (format!("# inconsistent: {reason}\n"), INCONSISTENT),
    }
}

fn push_witnesses(out: &mut String, ws: &[Graph]) {
    for (i, w) in ws.iter().enumerate() {
        let _ = writeln!(out, "# witness {}", i + 1);
        out.push_str(&write_graph(w));
    }
}
