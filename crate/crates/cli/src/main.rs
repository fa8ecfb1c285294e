//! `optsssp`: generate graphs, run Dijkstra or the optimal ordering pipeline,
//! audit lower bounds and sweep benchmarks into CSV.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 internal invariant violation.

mod bench;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use optsssp::audit::{bound_report, cost, energy, greedy_coloring, tree_log_linearizations, BoundReport};
use optsssp::dijkstra::run_dijkstra;
use optsssp::graph::{emit_graph, forward_edges, gen_broom, gen_dense, gen_family, parse_graph, Family, Graph};
use optsssp::heap::HeapKind;
use optsssp::optimal::{optimal_distance_ordering, OptimalError};
use optsssp::weights::WeightArena;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

impl From<OptimalError> for CliError {
    fn from(e: OptimalError) -> Self {
        match e {
            OptimalError::Undirected => CliError::Usage(e.to_string()),
            OptimalError::Invariant(m) => CliError::Invariant(m),
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Parser)]
#[command(name = "optsssp", version, about = "Instrumented shortest-path orderings in the comparison-addition model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// Graph family (same as --family).
        #[arg(value_name = "FAMILY", conflicts_with = "family")]
        family_arg: Option<String>,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an algorithm and print the linearization, one vertex per line.
    Run {
        /// `dijkstra` or `optimal` (same as --algo).
        #[arg(value_name = "ALGO", conflicts_with = "algo")]
        algo_arg: Option<Algo>,
        #[arg(long)]
        algo: Option<Algo>,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "workset")]
        heap: HeapKind,
        /// Append lower-bound certificates as `#` lines.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run Dijkstra and print its bound report as CSV.
    Audit {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "workset")]
        heap: HeapKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep sizes, heaps and algorithms, appending one CSV row per run.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone, Debug, Default)]
pub struct GraphArgs {
    /// broom, dense, star, path, fan, random_dag or random_digraph.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Broom leaves.
    #[arg(long)]
    t: Option<usize>,
    /// Broom path length.
    #[arg(long)]
    r: Option<usize>,
    /// Dense extra vertices.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Read the graph from an edge-list file instead of generating it.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Dijkstra,
    Optimal,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Dijkstra => "dijkstra",
            Algo::Optimal => "optimal",
        }
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dijkstra" => Ok(Algo::Dijkstra),
            "optimal" => Ok(Algo::Optimal),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Broom,
    Dense,
    Basic(Family),
}

impl GraphFamily {
    fn name(self) -> &'static str {
        match self {
            GraphFamily::Broom => "broom",
            GraphFamily::Dense => "dense",
            GraphFamily::Basic(f) => f.name(),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "broom" => Ok(GraphFamily::Broom),
            "dense" => Ok(GraphFamily::Dense),
            _ => s.parse().map(GraphFamily::Basic).map_err(|e| e.to_string()),
        }
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Generates a graph. Brooms take `--t`/`--r`, or `--n` with `t = ⌊√n⌋`;
/// dense graphs take `--k`, or `--n` with `k = ⌊√n⌋`.
pub fn generate(
    family: GraphFamily,
    n: Option<usize>,
    t: Option<usize>,
    r: Option<usize>,
    k: Option<usize>,
    seed: u64,
) -> Result<(Graph, WeightArena), CliError> {
    let need = |what: &str| usage(format!("{} needs {what}", family.name()));
    match family {
        GraphFamily::Broom => {
            let (t, r) = match (t, r, n) {
                (Some(t), Some(r), _) => (t, r),
                (t, None, Some(n)) => {
                    let t = t.unwrap_or_else(|| isqrt(n));
                    (t, n.checked_sub(t + 1).ok_or_else(|| need("n > t + 1"))?)
                }
                _ => return Err(need("--t and --r, or --n")),
            };
            if t == 0 || r == 0 {
                return Err(need("t >= 1 and r >= 1"));
            }
            Ok(gen_broom(t, r, seed))
        }
        GraphFamily::Dense => {
            let k = k.or(n.map(isqrt)).ok_or_else(|| need("--k or --n"))?;
            if k == 0 {
                return Err(need("k >= 1"));
            }
            if k > 31_622 {
                return Err(need("k small enough for exact weights"));
            }
            Ok(gen_dense(k, seed))
        }
        GraphFamily::Basic(f) => gen_family(f, n.ok_or_else(|| need("--n"))?, seed).map_err(usage),
    }
}

fn load(args: &GraphArgs, family_arg: Option<&str>) -> Result<(Graph, WeightArena), CliError> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return parse_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    let name = family_arg
        .or(args.family.as_deref())
        .ok_or_else(|| usage("give a graph with --family or --input"))?;
    let family: GraphFamily = name.parse().map_err(usage)?;
    generate(family, args.n, args.t, args.r, args.k, args.seed)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(usage),
    }
}

fn csv_lines(header: &[&str], row: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    w.write_record(row).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn cmd_run(algo: Algo, graph: &GraphArgs, heap: HeapKind, audit: bool, out: Option<&Path>) -> Result<(), CliError> {
    let (g, a) = load(graph, None)?;
    let mut text = String::new();
    let mut failure = None;
    match algo {
        Algo::Dijkstra => {
            let run = run_dijkstra(&g, &a, heap);
            if let Err(e) = run.check(&a) {
                return Err(CliError::Invariant(e));
            }
            for v in &run.linearization {
                text.push_str(&format!("{v}\n"));
            }
            text.push_str(&format!("# comparisons {}\n# additions {}\n", run.counters.comparisons, run.counters.additions));
            if audit {
                let rep = bound_report(&run, &g, &a);
                for line in csv_lines(&BoundReport::CSV_HEADER, &rep.csv_row()).lines() {
                    text.push_str(&format!("# {line}\n"));
                }
                if !rep.violations.is_empty() {
                    failure = Some(rep.violations.join("; "));
                }
            }
        }
        Algo::Optimal => {
            let o = optimal_distance_ordering(&g, &a)?;
            for v in &o.linearization {
                text.push_str(&format!("{v}\n"));
            }
            text.push_str(&format!(
                "# comparisons {}\n# additions {}\n# dedup_comparisons {}\n# dp_comparisons {}\n",
                o.counters.comparisons, o.counters.additions, o.sssp.dedup_comparisons, o.dp_comparisons
            ));
            if audit {
                let f = forward_edges(&g, &a, &o.dist);
                let coloring = greedy_coloring(&o.sssp.run.trace);
                text.push_str(&format!(
                    "# contracted_n {}\n# forward_edges {f}\n# forward_edge_bound {}\n# log2_linearizations {:.3}\n\
                     # contracted_cost {:.3}\n# contracted_energy {:.3}\n",
                    o.sssp.contracted_n(),
                    (f + 1).saturating_sub(g.n()),
                    tree_log_linearizations(&o.sssp.tree),
                    cost(&o.sssp.run.trace),
                    energy(&coloring),
                ));
            }
        }
    }
    write_output(out, &text)?;
    match failure {
        Some(v) => Err(CliError::Invariant(v)),
        None => Ok(()),
    }
}

fn cmd_audit(graph: &GraphArgs, heap: HeapKind, out: Option<&Path>) -> Result<(), CliError> {
    let (g, a) = load(graph, None)?;
    let run = run_dijkstra(&g, &a, heap);
    let rep = bound_report(&run, &g, &a);
    write_output(out, &csv_lines(&BoundReport::CSV_HEADER, &rep.csv_row()))?;
    if rep.violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(rep.violations.join("; ")))
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { family_arg, graph, out } => {
            let (g, a) = load(&graph, family_arg.as_deref())?;
            write_output(out.as_deref(), &emit_graph(&g, &a))
        }
        Command::Run { algo_arg, algo, graph, heap, audit, out } => {
            let algo = algo_arg.or(algo).unwrap_or(Algo::Dijkstra);
            cmd_run(algo, &graph, heap, audit, out.as_deref())
        }
        Command::Audit { graph, heap, out } => cmd_audit(&graph, heap, out.as_deref()),
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_is_exact_at_squares() {
        for r in 0..2000usize {
            assert_eq!(isqrt(r * r), r);
            if r > 0 {
                assert_eq!(isqrt(r * r - 1), r - 1);
            }
        }
    }

    #[test]
    fn broom_from_n_uses_square_root_leaves() {
        let (g, _) = generate(GraphFamily::Broom, Some(4096), None, None, None, 0).unwrap();
        assert_eq!((g.n(), g.out_degree(0)), (4096, 65));
    }

    #[test]
    fn degenerate_parameters_are_usage_errors() {
        for (fam, n, t, r, k) in [
            (GraphFamily::Broom, Some(2), None, None, None),
            (GraphFamily::Broom, None, Some(0), Some(3), None),
            (GraphFamily::Dense, None, None, None, Some(0)),
            (GraphFamily::Dense, None, None, None, None),
            (GraphFamily::Basic(Family::Star), Some(0), None, None, None),
        ] {
            assert!(matches!(generate(fam, n, t, r, k, 0), Err(CliError::Usage(_))), "{fam:?}");
        }
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("dense".parse::<GraphFamily>(), Ok(GraphFamily::Dense));
        assert_eq!("random_dag".parse::<GraphFamily>(), Ok(GraphFamily::Basic(Family::RandomDag)));
        assert!("tree".parse::<GraphFamily>().is_err());
    }
}
