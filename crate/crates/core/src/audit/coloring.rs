use super::segtree::{AddMaxTree, PrefixSearchTree};
use super::working_set::compress;
use crate::dijkstra::IntervalSet;
use crate::graph::SpanningTree;

/// One color: its member intervals and a time they all contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorClass {
    pub members: Vec<usize>,
    pub witness: u64,
}

/// Interval coloring in which every class shares a common time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectingColoring {
    pub color: Vec<usize>,
    pub classes: Vec<ColorClass>,
}

impl IntersectingColoring {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// Every interval has exactly one color and contains its class's witness.
    pub fn check(&self, iv: &IntervalSet) -> Result<(), String> {
        if self.color.len() != iv.len() {
            return Err("coloring size differs from the interval set".into());
        }
        let mut seen = vec![false; iv.len()];
        for (c, class) in self.classes.iter().enumerate() {
            for &x in &class.members {
                if seen[x] || self.color[x] != c {
                    return Err(format!("interval {x} is colored inconsistently"));
                }
                seen[x] = true;
                if !(iv.start[x] <= class.witness && class.witness <= iv.end[x]) {
                    return Err(format!("interval {x} misses the witness of color {c}"));
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(x) => Err(format!("interval {x} is uncolored")),
            None => Ok(()),
        }
    }

    /// Class indices ordered by witness time.
    pub fn by_witness(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.classes.len()).collect();
        order.sort_by_key(|&c| self.classes[c].witness);
        order
    }
}

/// `x log2 x`, with `0 log 0 = 0`.
pub fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `E(C) = 2 Σ c_i log2 c_i`.
pub fn energy(c: &IntersectingColoring) -> f64 {
    2.0 * c.classes.iter().map(|k| xlogx(k.members.len() as f64)).sum::<f64>()
}

/// Greedy intersecting coloring.
///
/// The largest working set among the remaining intervals always equals the
/// set of intervals alive at some time of maximum overlap. Each round takes
/// the leftmost such time, gives everything alive there a fresh color, and
/// removes it.
pub fn greedy_coloring(iv: &IntervalSet) -> IntersectingColoring {
    let n = iv.len();
    let mut color = vec![usize::MAX; n];
    let mut classes = Vec::new();
    if n == 0 {
        return IntersectingColoring { color, classes };
    }
    let (coords, lo, hi) = compress(iv);
    let mut counts = AddMaxTree::new(coords.len());
    for x in 0..n {
        counts.add(lo[x], hi[x], 1);
    }
    let mut by_start: Vec<usize> = (0..n).collect();
    by_start.sort_unstable_by_key(|&x| lo[x]);
    let starts: Vec<usize> = by_start.iter().map(|&x| lo[x]).collect();
    let ends: Vec<i64> = by_start.iter().map(|&x| hi[x] as i64).collect();
    let mut alive = PrefixSearchTree::new(&ends);

    let mut left = n;
    while left > 0 {
        let (t, _) = counts.argmax();
        let prefix = starts.partition_point(|&s| s <= t);
        let mut members = Vec::new();
        while let Some(i) = alive.find_first(prefix, t as i64) {
            let x = by_start[i];
            alive.set(i, i64::MIN);
            counts.add(lo[x], hi[x], -1);
            color[x] = classes.len();
            members.push(x);
        }
        members.sort_unstable();
        left -= members.len();
        classes.push(ColorClass { members, witness: coords[t] });
    }
    IntersectingColoring { color, classes }
}

/// A vertex of a later (or the same) barrier that is a proper ancestor of a
/// vertex in an earlier one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarrierViolation {
    pub ancestor: usize,
    pub descendant: usize,
}

/// Orders classes by witness time and checks that no vertex is a proper
/// descendant of a vertex in the same or a later class. Interval `v` is
/// vertex `v`.
pub fn verify_barrier_sequence(
    coloring: &IntersectingColoring,
    tree: &SpanningTree,
) -> Result<(), BarrierViolation> {
    let mut pos = vec![0usize; coloring.classes.len()];
    for (i, c) in coloring.by_witness().into_iter().enumerate() {
        pos[c] = i;
    }
    let rank: Vec<usize> = coloring.color.iter().map(|&c| pos[c]).collect();
    // highest-ranked proper ancestor of each vertex
    let mut best: Vec<Option<usize>> = vec![None; tree.n()];
    for v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            best[v] = match best[p] {
                Some(a) if rank[a] >= rank[p] => Some(a),
                _ => Some(p),
            };
        }
        if let Some(a) = best[v] {
            if rank[a] >= rank[v] {
                return Err(BarrierViolation { ancestor: a, descendant: v });
            }
        }
    }
    Ok(())
}
