use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use optsssp::audit::{bound_report, cost, energy, greedy_coloring, tree_log_linearizations};
use optsssp::dijkstra::run_dijkstra;
use optsssp::graph::forward_edges;
use optsssp::heap::HeapKind;
use optsssp::optimal::optimal_distance_ordering;

use crate::{generate, usage, Algo, CliError, GraphFamily};

pub const SCHEMA: &str = "# schema v1";

pub const COLUMNS: [&str; 12] = [
    "family",
    "n",
    "m",
    "heap",
    "algo",
    "comparisons",
    "additions",
    "cost_I",
    "energy",
    "log_linearizations",
    "forward_edges",
    "wall_ns",
];

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    family: GraphFamily,
    /// Sizes to sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Dense `k` values to sweep, used instead of `--n`.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Fixed broom leaf count; defaults to `⌊√n⌋`.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "workset,binary")]
    heap: Vec<HeapKind>,
    #[arg(long, value_delimiter = ',', default_value = "dijkstra")]
    algo: Vec<Algo>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV file; rows are appended.
    #[arg(long)]
    out: PathBuf,
}

/// One sweep point: `(n, k)` as passed to the generator.
type Point = (Option<usize>, Option<usize>);

fn points(args: &BenchArgs) -> Result<Vec<Point>, CliError> {
    match (args.n.is_empty(), args.k.is_empty()) {
        (false, true) => Ok(args.n.iter().map(|&n| (Some(n), None)).collect()),
        (true, false) if args.family == GraphFamily::Dense => Ok(args.k.iter().map(|&k| (None, Some(k))).collect()),
        (true, false) => Err(usage("--k only applies to the dense family")),
        (false, false) => Err(usage("give either --n or --k")),
        (true, true) => Err(usage("give sizes with --n")),
    }
}

/// Opens `path` for appending, writing the schema line and header if new.
fn open_csv(path: &PathBuf) -> Result<csv::Writer<fs::File>, CliError> {
    let io = |e: std::io::Error| usage(format!("{}: {e}", path.display()));
    let existing = match fs::File::open(path) {
        Ok(f) => BufReader::new(f).lines().next().transpose().map_err(io)?,
        Err(_) => None,
    };
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    let fresh = match existing.as_deref() {
        None => true,
        Some(SCHEMA) => false,
        Some(other) => {
            return Err(usage(format!("{} starts with `{other}`, expected `{SCHEMA}`", path.display())))
        }
    };
    if fresh {
        writeln!(file, "{SCHEMA}").map_err(io)?;
    }
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        w.write_record(COLUMNS).map_err(usage)?;
    }
    Ok(w)
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let pts = points(args)?;
    let mut w = open_csv(&args.out)?;
    for (n, k) in pts {
        let (g, a) = generate(args.family, n, args.t, None, k, args.seed)?;
        for &algo in &args.algo {
            let heaps: &[HeapKind] = if algo == Algo::Optimal { &[HeapKind::Workset] } else { &args.heap };
            for &heap in heaps {
                a.reset_counters();
                let row = match algo {
                    Algo::Dijkstra => {
                        let t0 = Instant::now();
                        let run = run_dijkstra(&g, &a, heap);
                        let wall = t0.elapsed().as_nanos();
                        let rep = bound_report(&run, &g, &a);
                        if !rep.violations.is_empty() {
                            return Err(CliError::Invariant(rep.violations.join("; ")));
                        }
                        [
                            run.counters.comparisons.to_string(),
                            run.counters.additions.to_string(),
                            format!("{:.3}", rep.cost),
                            format!("{:.3}", rep.energy),
                            format!("{:.3}", rep.log2_linearizations),
                            rep.forward_edges.to_string(),
                            wall.to_string(),
                        ]
                    }
                    Algo::Optimal => {
                        let t0 = Instant::now();
                        let o = optimal_distance_ordering(&g, &a)?;
                        let wall = t0.elapsed().as_nanos();
                        let trace = &o.sssp.run.trace;
                        [
                            o.counters.comparisons.to_string(),
                            o.counters.additions.to_string(),
                            format!("{:.3}", cost(trace)),
                            format!("{:.3}", energy(&greedy_coloring(trace))),
                            format!("{:.3}", tree_log_linearizations(&o.sssp.tree)),
                            forward_edges(&g, &a, &o.dist).to_string(),
                            wall.to_string(),
                        ]
                    }
                };
                let mut record = vec![
                    args.family.name().to_string(),
                    g.n().to_string(),
                    g.m().to_string(),
                    heap.to_string(),
                    algo.name().to_string(),
                ];
                record.extend(row);
                w.write_record(&record).map_err(usage)?;
                w.flush().map_err(usage)?;
            }
        }
    }
    Ok(())
}
