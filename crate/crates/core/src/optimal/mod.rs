//! Distance ordering with a comparison count matching the lower bounds.
//!
//! Dominator-tree chains are contracted with additions only, parallel arcs
//! are merged lazily, working-set Dijkstra runs on what remains, and the
//! uncontracted SSSP tree is linearized by a Hwang-Lin merge DP.

mod contraction;
mod dominators;
mod merge;

pub use contraction::{contract_chains, deduplicate, drop_back_edges, ContractionRecord, Deduplicated};
pub use dominators::{dominator_tree, DominatorTree};
pub use merge::{hwang_lin_merge, log2_binomial, tree_dp_linearize};

use thiserror::Error;

use crate::dijkstra::{run_dijkstra, DijkstraRun};
use crate::graph::{Graph, SpanningTree, TreeRole};
use crate::heap::HeapKind;
use crate::weights::{Counters, WeightArena, WeightHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OptimalError {
    #[error("the optimal pipeline needs a directed graph")]
    Undirected,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// SSSP tree of the input together with what the contraction left behind.
#[derive(Debug)]
pub struct ContractedSssp {
    pub tree: SpanningTree,
    /// Input arc realizing each vertex's tree parent.
    pub parent_edge: Vec<Option<usize>>,
    pub record: ContractionRecord,
    /// Back edges dropped before contraction.
    pub dropped: usize,
    /// Arcs of the contracted multigraph and of its deduplication.
    pub multi_arcs: usize,
    pub dedup_arcs: usize,
    /// Comparisons spent on lazy group minima and parallel chain links.
    pub dedup_comparisons: u64,
    /// Dijkstra on the contracted graph; its counters include the lazy minima.
    pub run: DijkstraRun,
    pub counters: Counters,
}

impl ContractedSssp {
    pub fn contracted_n(&self) -> usize {
        self.record.members.len()
    }
}

/// Builds an SSSP tree by contracting the graph, running working-set Dijkstra
/// on the result and uncontracting.
pub fn sssp_via_contraction(g: &Graph, arena: &WeightArena) -> Result<ContractedSssp, OptimalError> {
    if !g.is_directed() {
        return Err(OptimalError::Undirected);
    }
    let before = arena.counters();
    let dom = dominator_tree(g);
    let (pruned, kept) = drop_back_edges(g, &dom);
    let (multi, record) = contract_chains(&pruned, arena, &dom)?;
    let dedup = deduplicate(&multi);
    let run = run_dijkstra(&dedup, arena, HeapKind::Workset);

    let mut parent_edge = vec![None; g.n()];
    for (v, link) in record.link_arc.iter().enumerate() {
        if let Some(e) = link {
            parent_edge[v] = Some(kept[*e]);
        }
    }
    for (x, group) in run.sssp_edge.iter().enumerate() {
        if let Some(group) = group {
            let arc = dedup
                .argmin(*group)
                .ok_or_else(|| OptimalError::Invariant(format!("tree arc into {x} was never evaluated")))?;
            let orig = kept[record.arc_origin[arc]];
            parent_edge[record.members[x][0]] = Some(orig);
        }
    }
    let parents = parent_edge.iter().map(|e| e.map(|e| g.edge(e).tail)).collect();
    let tree = SpanningTree::new(g.source(), parents, TreeRole::Sssp).map_err(OptimalError::Invariant)?;
    Ok(ContractedSssp {
        tree,
        parent_edge,
        dropped: g.m() - pruned.m(),
        multi_arcs: multi.m(),
        dedup_arcs: dedup.arc_count(),
        dedup_comparisons: dedup.comparisons() + record.link_comparisons,
        record,
        run,
        counters: arena.counters().since(before),
    })
}

/// Distances along tree arcs, by additions only.
pub fn tree_distances(g: &Graph, arena: &WeightArena, tree: &SpanningTree, parent_edge: &[Option<usize>]) -> Vec<WeightHandle> {
    let mut d = vec![arena.zero(); g.n()];
    for v in tree.preorder() {
        if let (Some(p), Some(e)) = (tree.parent(v), parent_edge[v]) {
            d[v] = if p == g.source() { g.edge(e).weight } else { arena.add(d[p], g.edge(e).weight) };
        }
    }
    d
}

#[derive(Debug)]
pub struct OptimalOrdering {
    pub linearization: Vec<usize>,
    pub dist: Vec<WeightHandle>,
    pub sssp: ContractedSssp,
    pub dp_comparisons: u64,
    /// Arena work of the whole pipeline.
    pub counters: Counters,
}

/// Orders vertices by distance from the source.
pub fn optimal_distance_ordering(g: &Graph, arena: &WeightArena) -> Result<OptimalOrdering, OptimalError> {
    let before = arena.counters();
    let sssp = sssp_via_contraction(g, arena)?;
    let dist = tree_distances(g, arena, &sssp.tree, &sssp.parent_edge);
    let c0 = arena.counters().comparisons;
    let linearization = tree_dp_linearize(&sssp.tree, &dist, arena);
    let dp_comparisons = arena.counters().comparisons - c0;
    Ok(OptimalOrdering { linearization, dist, sssp, dp_comparisons, counters: arena.counters().since(before) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{energy, greedy_coloring};
    use crate::graph::{forward_edges, gen_broom, gen_dense, gen_family, parse_graph, random_dag, random_digraph, Edge, Family};

    fn bellman_ford(g: &Graph, arena: &WeightArena) -> Vec<u128> {
        let audit = arena.audit();
        let mut d = vec![u128::MAX; g.n()];
        d[g.source()] = 0;
        for _ in 0..g.n() {
            let mut changed = false;
            for e in g.edges() {
                if d[e.tail] != u128::MAX && d[e.tail] + audit.scaled(e.weight) < d[e.head] {
                    d[e.head] = d[e.tail] + audit.scaled(e.weight);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        d
    }

    fn tree_path_sums(g: &Graph, arena: &WeightArena, s: &ContractedSssp) -> Vec<u128> {
        let audit = arena.audit();
        let mut d = vec![0u128; g.n()];
        for v in s.tree.preorder() {
            if let Some(e) = s.parent_edge[v] {
                let e = g.edge(e);
                assert_eq!(Some(e.tail), s.tree.parent(v));
                assert_eq!(e.head, v);
                d[v] = d[e.tail] + audit.scaled(e.weight);
            }
        }
        d
    }

    #[test]
    fn path_costs_nothing() {
        for n in [1, 2, 10, 1000] {
            let (g, a) = gen_family(Family::Path, n, 3).unwrap();
            let out = optimal_distance_ordering(&g, &a).unwrap();
            assert_eq!(out.linearization, (0..n).collect::<Vec<_>>());
            assert_eq!(out.counters.comparisons, 0, "n = {n}");
            assert_eq!(out.sssp.contracted_n(), 1);
        }
    }

    #[test]
    fn broom_collapses_its_handle() {
        let (t, r) = (16, 200);
        let (g, a) = gen_broom(t, r, 5);
        let out = optimal_distance_ordering(&g, &a).unwrap();
        // s is a branching point, so only v_1..v_r collapse into one vertex
        assert_eq!(out.sssp.contracted_n(), 1 + 1 + t);
        let run = crate::dijkstra::run_dijkstra(&g, &a, HeapKind::Binary);
        assert_eq!(out.linearization, run.linearization);
        let (g2, a2) = gen_broom(t, 10 * r, 5);
        let out2 = optimal_distance_ordering(&g2, &a2).unwrap();
        assert_eq!(out.sssp.counters.comparisons, out2.sssp.counters.comparisons);
    }

    #[test]
    fn star_sorts_leaves() {
        let n = 200;
        let (g, a) = gen_family(Family::Star, n, 1).unwrap();
        let out = optimal_distance_ordering(&g, &a).unwrap();
        let audit = a.audit();
        assert!(out.linearization.windows(2).all(|w| audit.scaled(out.dist[w[0]]) < audit.scaled(out.dist[w[1]])));
        let lf = crate::audit::log2_factorial(n);
        assert!((out.counters.comparisons as f64) < 8.0 * lf);
    }

    #[test]
    fn parallel_arcs_are_merged_lazily() {
        let (g, a) = parse_graph("3 4 0 directed\n0 1 3\n0 1 5\n0 2 1\n2 1 9").unwrap();
        let dom = dominator_tree(&g);
        let (pruned, _) = drop_back_edges(&g, &dom);
        let (multi, _) = contract_chains(&pruned, &a, &dom).unwrap();
        let dedup = deduplicate(&multi);
        assert_eq!(dedup.arc_count(), 3);
        assert_eq!(dedup.comparisons(), 0);
        let (e01, _) = (0..3).map(|e| (e, dedup.group(e).len())).find(|&(_, l)| l == 2).unwrap();
        use crate::graph::Network;
        let w = dedup.weight(&a, e01);
        assert_eq!(a.audit().to_decimal(w), "3");
        assert_eq!(dedup.comparisons(), 1);
        dedup.weight(&a, e01);
        assert_eq!(dedup.comparisons(), 1);
    }

    #[test]
    fn parallel_chain_links_take_the_minimum() {
        let (g, a) = parse_graph("3 3 0 directed\n0 1 4\n0 1 2\n1 2 1").unwrap();
        let s = sssp_via_contraction(&g, &a).unwrap();
        assert_eq!(s.contracted_n(), 1);
        assert_eq!(s.dedup_comparisons, 1);
        assert_eq!(tree_path_sums(&g, &a, &s), vec![0, 2, 3]);
    }

    #[test]
    fn undirected_is_rejected() {
        let (g, a) = parse_graph("2 1 0 undirected\n0 1 1").unwrap();
        assert_eq!(sssp_via_contraction(&g, &a).unwrap_err(), OptimalError::Undirected);
    }

    #[test]
    fn back_edges_dropped() {
        let (g, _) = parse_graph("3 3 0 directed\n0 1 1\n1 2 1\n2 1 1").unwrap();
        let dom = dominator_tree(&g);
        let (pruned, kept) = drop_back_edges(&g, &dom);
        assert_eq!(kept, vec![0, 1]);
        assert_eq!(pruned.m(), 2);
        for seed in 0..50 {
            let (g, _) = random_digraph(40, 100, seed);
            let dom = dominator_tree(&g);
            let (pruned, _) = drop_back_edges(&g, &dom);
            assert!(pruned.edges().iter().all(|e| !dom.dominates(e.head, e.tail)));
            assert_eq!(dominator_tree(&pruned).tree().parents(), dom.tree().parents());
            let (dag, _) = random_dag(40, 100, seed);
            let dom = dominator_tree(&dag);
            assert_eq!(drop_back_edges(&dag, &dom).0.m(), dag.m());
        }
    }

    #[test]
    fn contracted_dominators_match_recomputation() {
        for seed in 0..200 {
            let n = 2 + seed as usize % 60;
            let (g, a) = if seed % 2 == 0 { random_digraph(n, n / 2, seed) } else { random_dag(n, n / 3, seed) };
            let dom = dominator_tree(&g);
            let (pruned, _) = drop_back_edges(&g, &dom);
            let (multi, rec) = contract_chains(&pruned, &a, &dom).unwrap();
            let fresh = dominator_tree(&multi);
            assert_eq!(fresh.tree().parents(), rec.dominators.parents(), "seed {seed}");
            let ch = rec.dominators.children();
            assert!(ch.iter().all(|c| c.len() != 1), "seed {seed}");
            // each contracted vertex loses exactly its chain links
            assert_eq!(g.n() - multi.n(), rec.link_arc.iter().flatten().count());
        }
    }

    #[test]
    fn contraction_spends_no_comparisons_on_simple_graphs() {
        for seed in 0..50 {
            let (g, a) = random_dag(80, 40, seed);
            let c0 = a.counters().comparisons;
            let dom = dominator_tree(&g);
            let (pruned, _) = drop_back_edges(&g, &dom);
            let (_, rec) = contract_chains(&pruned, &a, &dom).unwrap();
            if rec.link_comparisons == 0 {
                assert_eq!(a.counters().comparisons, c0);
            }
        }
    }

    #[test]
    fn trees_match_bellman_ford() {
        for seed in 0..300 {
            let n = 1 + seed as usize % 80;
            let (g, a) = match seed % 3 {
                0 => random_digraph(n, 2 * n, seed),
                1 => random_dag(n, n, seed),
                _ => random_digraph(n, n / 4, seed),
            };
            let s = sssp_via_contraction(&g, &a).unwrap();
            assert_eq!(tree_path_sums(&g, &a, &s), bellman_ford(&g, &a), "seed {seed}");
        }
    }

    #[test]
    fn ordering_matches_reference_dijkstra() {
        for seed in 0..200 {
            let n = 1 + seed as usize % 70;
            let (g, a) = random_digraph(n, 2 * n, seed);
            let out = optimal_distance_ordering(&g, &a).unwrap();
            let reference = crate::dijkstra::run_dijkstra(&g, &a, HeapKind::Binary);
            let audit = a.audit();
            let d: Vec<u128> = out.linearization.iter().map(|&v| audit.scaled(reference.dist[v])).collect();
            assert!(d.windows(2).all(|w| w[0] <= w[1]), "seed {seed}");
            let mut distinct = d.clone();
            distinct.dedup();
            if distinct.len() == n {
                assert_eq!(out.linearization, reference.linearization, "seed {seed}");
            }
        }
    }

    #[test]
    fn dedup_spend_within_forward_budget() {
        for seed in 0..200 {
            let n = 2 + seed as usize % 60;
            let (g, a) = random_digraph(n, 3 * n, seed);
            let s = sssp_via_contraction(&g, &a).unwrap();
            let dist = tree_distances(&g, &a, &s.tree, &s.parent_edge);
            let f = forward_edges(&g, &a, &dist);
            assert!(s.dedup_comparisons as usize + n <= f + 1, "seed {seed}");
        }
    }

    #[test]
    fn parallel_multigraph_budget() {
        // every vertex doubly linked from s: all arcs forward
        let a = WeightArena::integral();
        let mut edges = Vec::new();
        for v in 1..6 {
            for w in [10 * v as u64, 10 * v as u64 + 3, 10 * v as u64 + 1] {
                edges.push(Edge { tail: 0, head: v, weight: a.insert_integer(w) });
            }
        }
        let g = Graph::directed(&a, 6, 0, edges).unwrap();
        let s = sssp_via_contraction(&g, &a).unwrap();
        assert_eq!(s.dedup_comparisons, 10);
        let dist = tree_distances(&g, &a, &s.tree, &s.parent_edge);
        assert_eq!(forward_edges(&g, &a, &dist) - 6 + 1, 10);
    }

    /// Comparisons of the pipeline against the certificate of its own contracted run.
    #[test]
    fn end_to_end_budget() {
        let c1 = 16.0;
        let mut graphs: Vec<(Graph, WeightArena)> = Vec::new();
        for seed in 0..30 {
            graphs.push(random_digraph(200, 400, seed));
            graphs.push(random_dag(200, 300, seed));
        }
        for fam in Family::ALL {
            graphs.push(gen_family(fam, 300, 1).unwrap());
        }
        graphs.push(gen_broom(30, 900, 2));
        graphs.push(gen_dense(12, 2));
        for (g, a) in &graphs {
            let out = optimal_distance_ordering(g, a).unwrap();
            let s = &out.sssp;
            let e = energy(&greedy_coloring(&s.run.trace));
            let f = forward_edges(g, a, &out.dist);
            let budget = e + s.contracted_n() as f64 + (f + 1 - g.n()) as f64;
            let used = out.counters.comparisons - out.dp_comparisons;
            assert!((used as f64) <= c1 * budget, "{used} > {c1} x {budget}");
        }
    }
}
