//! Lower-bound certificates computed from a Dijkstra run.
//!
//! All logarithms are base 2 and `0 log 0 = 0`. Inequalities between sums of
//! logarithms are checked with a relative guard of `1e-9` that only absorbs
//! floating-point rounding.

mod coloring;
mod linearizations;
mod segtree;
mod working_set;

pub use coloring::{
    energy, greedy_coloring, verify_barrier_sequence, xlogx, BarrierViolation, ColorClass,
    IntersectingColoring,
};
pub use linearizations::{bfs_layer_bound, log2_factorial, tree_log_linearizations};
pub use working_set::{cost, max_overlap, working_sets};

use crate::dijkstra::DijkstraRun;
use crate::graph::{forward_edges, Graph};
use crate::heap::HeapKind;
use crate::weights::WeightArena;

/// `a <= b` up to floating-point rounding.
pub fn le_rounded(a: f64, b: f64) -> bool {
    a <= b + 1e-9 * b.abs().max(1.0)
}

/// Measured work of one run next to the lower bounds it certifies.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub heap: HeapKind,
    pub n: usize,
    pub arcs: usize,
    /// `cost(I) = Σ log2 |W_x|` of the run's trace.
    pub cost: f64,
    /// `E(C)` of the greedy coloring.
    pub energy: f64,
    /// `Σ log2(c_i!)` over greedy classes.
    pub barrier_log: f64,
    /// `log2 Linearizations(T_explore)`.
    pub log2_linearizations: f64,
    pub bfs_layer_bound: f64,
    /// `|F|`, the distance-forward arcs.
    pub forward_edges: usize,
    /// `max(|F| - n + 1, 0)`.
    pub forward_edge_bound: usize,
    pub comparisons: u64,
    pub additions: u64,
    pub extract_comparisons: u64,
    /// Broken inequalities, empty when the certificate holds.
    pub violations: Vec<String>,
}

impl BoundReport {
    pub const CSV_HEADER: [&'static str; 15] = [
        "heap",
        "n",
        "arcs",
        "comparisons",
        "additions",
        "extract_comparisons",
        "cost",
        "energy",
        "barrier_log",
        "log2_linearizations",
        "bfs_layer_bound",
        "forward_edges",
        "forward_edge_bound",
        "ok",
        "violations",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.heap.to_string(),
            self.n.to_string(),
            self.arcs.to_string(),
            self.comparisons.to_string(),
            self.additions.to_string(),
            self.extract_comparisons.to_string(),
            format!("{:.3}", self.cost),
            format!("{:.3}", self.energy),
            format!("{:.3}", self.barrier_log),
            format!("{:.3}", self.log2_linearizations),
            format!("{:.3}", self.bfs_layer_bound),
            self.forward_edges.to_string(),
            self.forward_edge_bound.to_string(),
            self.violations.is_empty().to_string(),
            self.violations.join("; "),
        ]
    }
}

/// Builds the certificate for `run` on `g` and records any broken inequality:
///
/// * `E(C) >= cost(I)` for the greedy coloring `C`;
/// * the classes ordered by witness time form a barrier sequence of `T_explore`;
/// * `Σ log2(c_i!) <= log2 Linearizations(T_explore)`;
/// * `E(C) <= 4 Σ log2(c_i!)`, which holds since `c log2 c <= 2 log2(c!)` for `c >= 1`.
pub fn bound_report(run: &DijkstraRun, g: &Graph, arena: &WeightArena) -> BoundReport {
    let mut violations = Vec::new();
    if let Err(e) = run.check(arena) {
        violations.push(format!("run: {e}"));
    }
    let cost = cost(&run.trace);
    let coloring = greedy_coloring(&run.trace);
    if let Err(e) = coloring.check(&run.trace) {
        violations.push(format!("coloring: {e}"));
    }
    let energy = energy(&coloring);
    let barrier_log: f64 = coloring.classes.iter().map(|c| log2_factorial(c.members.len())).sum();
    let log2_lin = tree_log_linearizations(&run.explore);
    if !le_rounded(cost, energy) {
        violations.push(format!("energy {energy:.3} < cost {cost:.3}"));
    }
    if let Err(v) = verify_barrier_sequence(&coloring, &run.explore) {
        violations.push(format!("barrier: {} is an ancestor of {}", v.ancestor, v.descendant));
    }
    if !le_rounded(barrier_log, log2_lin) {
        violations.push(format!("barrier bound {barrier_log:.3} > log2 linearizations {log2_lin:.3}"));
    }
    if !le_rounded(energy, 4.0 * barrier_log) {
        violations.push(format!("energy {energy:.3} > 4 x barrier bound {barrier_log:.3}"));
    }
    let f = forward_edges(g, arena, &run.dist);
    BoundReport {
        heap: run.heap,
        n: g.n(),
        arcs: g.m(),
        cost,
        energy,
        barrier_log,
        log2_linearizations: log2_lin,
        bfs_layer_bound: bfs_layer_bound(g),
        forward_edges: f,
        forward_edge_bound: (f + 1).saturating_sub(g.n()),
        comparisons: run.counters.comparisons,
        additions: run.counters.additions,
        extract_comparisons: run.extract_comparisons,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::run_dijkstra;
    use crate::graph::{gen_broom, gen_dense, gen_family, Family};

    #[test]
    fn path_report_is_all_zero() {
        let (g, a) = gen_family(Family::Path, 10, 0).unwrap();
        let r = bound_report(&run_dijkstra(&g, &a, HeapKind::Workset), &g, &a);
        assert_eq!((r.cost, r.energy), (0.0, 0.0));
        assert_eq!(r.forward_edges, 9);
        assert_eq!(r.forward_edge_bound, 0);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn star_cost_near_log_factorial() {
        let n = 50;
        let (g, a) = gen_family(Family::Star, n, 3).unwrap();
        let r = bound_report(&run_dijkstra(&g, &a, HeapKind::Workset), &g, &a);
        let lf = log2_factorial(n);
        // leaves leave in random order, so cost sits between log2(n!) / 2 and log2(n!)
        assert!(r.cost <= lf + 1e-9 && r.cost >= lf / 2.0, "{} vs {lf}", r.cost);
        assert!(r.energy <= 2.0 * 2.0 * lf && r.energy >= r.cost);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn broom_report() {
        let (t, r) = (32, 992);
        let (g, a) = gen_broom(t, r, 1);
        let rep = bound_report(&run_dijkstra(&g, &a, HeapKind::Workset), &g, &a);
        assert!(rep.violations.is_empty());
        let tlogt = xlogx(t as f64);
        assert!(rep.energy >= tlogt && rep.energy <= 4.0 * xlogx((t + 1) as f64));
        assert!((rep.comparisons as f64) < 20.0 * (g.n() as f64));
    }

    #[test]
    fn reports_hold_across_families() {
        for fam in Family::ALL {
            for seed in 0..10 {
                let (g, a) = gen_family(fam, 40, seed).unwrap();
                for kind in HeapKind::ALL {
                    let r = bound_report(&run_dijkstra(&g, &a, kind), &g, &a);
                    assert!(r.violations.is_empty(), "{fam} {kind} {seed}: {:?}", r.violations);
                }
            }
        }
        let (g, a) = gen_dense(6, 0);
        let r = bound_report(&run_dijkstra(&g, &a, HeapKind::Workset), &g, &a);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn csv_row_matches_header() {
        let (g, a) = gen_family(Family::Fan, 5, 0).unwrap();
        let r = bound_report(&run_dijkstra(&g, &a, HeapKind::Pairing), &g, &a);
        assert_eq!(r.csv_row().len(), BoundReport::CSV_HEADER.len());
    }
}
