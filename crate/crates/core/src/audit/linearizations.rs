use crate::graph::{Graph, SpanningTree};

use super::coloring::xlogx;

/// `log2(n!)`.
pub fn log2_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

/// `log2` of the number of linear extensions of a rooted tree (parents before
/// children), by the hook-length formula `n! / Π_v |T(v)|`.
///
/// Factors of `n!` and subtree sizes cancel as integers before any logarithm
/// is taken, so a path gives exactly `0`.
pub fn tree_log_linearizations(t: &SpanningTree) -> f64 {
    let n = t.n();
    let mut exponent = vec![1i64; n + 1];
    for s in t.subtree_sizes() {
        exponent[s] -= 1;
    }
    let log: f64 = (2..=n).map(|k| exponent[k] as f64 * (k as f64).log2()).sum();
    log.max(0.0)
}

/// `Σ_i |B_i| log2 |B_i|` over the BFS layers `B_i` of the graph.
pub fn bfs_layer_bound(g: &Graph) -> f64 {
    g.bfs_layers().iter().map(|layer| xlogx(layer.len() as f64)).sum()
}
