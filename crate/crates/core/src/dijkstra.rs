//! Dijkstra's algorithm over any [`MinQueue`], with lazy insertion and a
//! decrease-key on every relaxation.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::graph::{Network, SpanningTree, TreeRole};
use crate::heap::binary::BinaryHeap;
use crate::heap::fibonacci::FibonacciHeap;
use crate::heap::pairing::PairingHeap;
use crate::heap::{HeapKind, Key, MinQueue};
use crate::weights::{Counters, WeightArena, WeightHandle};
use crate::workset::WorkSetHeap;

/// Per-vertex heap lifetime `[start, end]`, measured in Insert and ExtractMin
/// events (the first event happens at time 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    pub start: Vec<u64>,
    pub end: Vec<u64>,
}

impl IntervalSet {
    pub fn len(&self) -> usize {
        self.start.len()
    }

    pub fn is_empty(&self) -> bool {
        self.start.is_empty()
    }

    /// All endpoints distinct and `start < end` for every interval.
    pub fn check(&self) -> Result<(), String> {
        let mut seen = std::collections::HashSet::with_capacity(2 * self.len());
        for v in 0..self.len() {
            if self.start[v] >= self.end[v] {
                return Err(format!("interval of {v} is empty"));
            }
            if !seen.insert(self.start[v]) || !seen.insert(self.end[v]) {
                return Err(format!("interval of {v} shares an endpoint"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DijkstraRun {
    pub heap: HeapKind,
    /// Vertices in extraction order.
    pub linearization: Vec<usize>,
    pub dist: Vec<WeightHandle>,
    pub sssp: SpanningTree,
    /// Arc realizing each vertex's SSSP parent.
    pub sssp_edge: Vec<Option<usize>>,
    pub explore: SpanningTree,
    pub trace: IntervalSet,
    /// Arena work done by the whole run.
    pub counters: Counters,
    /// Comparisons spent inside ExtractMin.
    pub extract_comparisons: u64,
    pub decrease_key_calls: u64,
}

/// Runs Dijkstra from the network's source using the chosen heap.
pub fn run_dijkstra<N: Network + ?Sized>(g: &N, arena: &WeightArena, kind: HeapKind) -> DijkstraRun {
    match kind {
        HeapKind::Workset => run_with(g, arena, WorkSetHeap::new(), kind),
        HeapKind::Fibonacci => run_with(g, arena, FibonacciHeap::new(), kind),
        HeapKind::Binary => run_with(g, arena, BinaryHeap::new(), kind),
        HeapKind::Pairing => run_with(g, arena, PairingHeap::new(), kind),
    }
}

/// Runs Dijkstra with a caller-supplied heap.
pub fn run_with<N: Network + ?Sized, H: MinQueue>(
    g: &N,
    arena: &WeightArena,
    mut heap: H,
    kind: HeapKind,
) -> DijkstraRun {
    let n = g.vertex_count();
    let s = g.source();
    let before = arena.counters();
    let mut dist: Vec<Option<WeightHandle>> = vec![None; n];
    let mut handle: Vec<Option<H::Handle>> = vec![None; n];
    let mut done = vec![false; n];
    let mut sssp_edge = vec![None; n];
    let mut sssp_parent = vec![None; n];
    let mut explore_parent = vec![None; n];
    let mut start = vec![0u64; n];
    let mut end = vec![0u64; n];
    let mut clock = 0u64;
    let mut linearization = Vec::with_capacity(n);
    let mut extract_comparisons = 0;
    let mut decrease_key_calls = 0;

    dist[s] = Some(arena.zero());
    handle[s] = Some(heap.insert(arena, Key::Finite(arena.zero()), s as u32));
    start[s] = clock;
    clock += 1;

    while !heap.is_empty() {
        let c0 = arena.counters().comparisons;
        let (key, u) = heap.extract_min(arena).expect("heap is nonempty");
        extract_comparisons += arena.counters().comparisons - c0;
        let u = u as usize;
        let du = match key {
            Key::Finite(h) => h,
            Key::Infinite => unreachable!("every inserted vertex is relaxed right away"),
        };
        end[u] = clock;
        clock += 1;
        done[u] = true;
        linearization.push(u);

        for &e in g.out_edges(u) {
            let v = g.head(e);
            if done[v] {
                continue;
            }
            if handle[v].is_none() {
                handle[v] = Some(heap.insert(arena, Key::Infinite, v as u32));
                explore_parent[v] = Some(u);
                start[v] = clock;
                clock += 1;
            }
            let cand = arena.add(du, g.weight(arena, e));
            let better = match dist[v] {
                None => true,
                Some(cur) => arena.compare(cand, cur) == Ordering::Less,
            };
            if better {
                dist[v] = Some(cand);
                sssp_edge[v] = Some(e);
                sssp_parent[v] = Some(u);
            }
            decrease_key_calls += 1;
            heap.decrease_key(arena, handle[v].unwrap(), Key::Finite(dist[v].unwrap()))
                .expect("relaxation never increases a key");
        }
    }

    assert_eq!(linearization.len(), n, "every vertex must be reachable from the source");
    DijkstraRun {
        heap: kind,
        linearization,
        dist: dist.into_iter().map(Option::unwrap).collect(),
        sssp: SpanningTree::new(s, sssp_parent, TreeRole::Sssp).expect("sssp parents form a tree"),
        sssp_edge,
        explore: SpanningTree::new(s, explore_parent, TreeRole::Exploration)
            .expect("explore parents form a tree"),
        trace: IntervalSet { start, end },
        counters: arena.counters().since(before),
        extract_comparisons,
        decrease_key_calls,
    }
}

impl DijkstraRun {
    pub fn n(&self) -> usize {
        self.linearization.len()
    }

    /// Position of each vertex in the linearization.
    pub fn rank(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, &v) in self.linearization.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Checks the run's structural guarantees without touching the counters.
    pub fn check(&self, arena: &WeightArena) -> Result<(), String> {
        let audit = arena.audit();
        for w in self.linearization.windows(2) {
            if audit.compare(self.dist[w[0]], self.dist[w[1]]) == Ordering::Greater {
                return Err(format!("{} extracted before closer vertex {}", w[0], w[1]));
            }
        }
        self.trace.check()?;
        for v in 0..self.n() {
            if let Some(p) = self.explore.parent(v) {
                if self.trace.start[v] <= self.trace.end[p] {
                    return Err(format!("{v} entered the heap before its explore parent {p} left"));
                }
            }
        }
        Ok(())
    }

    /// Line-oriented summary: counters, tree arcs and the linearization.
    pub fn report(&self, arena: &WeightArena) -> String {
        let audit = arena.audit();
        let mut out = String::new();
        writeln!(out, "heap {}", self.heap).unwrap();
        writeln!(out, "n {}", self.n()).unwrap();
        writeln!(out, "comparisons {}", self.counters.comparisons).unwrap();
        writeln!(out, "additions {}", self.counters.additions).unwrap();
        writeln!(out, "extract_comparisons {}", self.extract_comparisons).unwrap();
        writeln!(out, "decrease_keys {}", self.decrease_key_calls).unwrap();
        let lin: Vec<String> = self.linearization.iter().map(usize::to_string).collect();
        writeln!(out, "linearization {}", lin.join(" ")).unwrap();
        for v in 0..self.n() {
            let sp = self.sssp.parent(v).map_or("-".into(), |p| p.to_string());
            let ep = self.explore.parent(v).map_or("-".into(), |p| p.to_string());
            writeln!(out, "vertex {v} dist {} sssp {sp} explore {ep}", audit.to_decimal(self.dist[v])).unwrap();
        }
        out
    }
}
