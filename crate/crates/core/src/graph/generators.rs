//! Seeded graph families. Vertex 0 is always the source.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Edge, Graph, GraphError};
use crate::weights::WeightArena;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn build(arena: WeightArena, n: usize, edges: Vec<Edge>) -> (Graph, WeightArena) {
    let g = Graph::directed(&arena, n, 0, edges).expect("generators produce valid graphs");
    (g, arena)
}

/// Broom: `s` has an arc to each of `t` leaves and to the first vertex of an
/// `r`-vertex path.
///
/// Ids: `s = 0`, path `1..=r`, leaves `r+1..=r+t`. Path arcs weigh 1; leaf
/// arcs weigh `n + 42 + o` for a shuffled offset `o` in `0..t`, so every leaf
/// is farther than every path vertex and leaf distances are distinct.
pub fn gen_broom(t: usize, r: usize, seed: u64) -> (Graph, WeightArena) {
    assert!(t >= 1 && r >= 1, "broom needs t >= 1 and r >= 1");
    let n = 1 + r + t;
    let arena = WeightArena::integral();
    let one = arena.insert_integer(1);
    let mut offsets: Vec<u64> = (0..t as u64).collect();
    offsets.shuffle(&mut rng(seed));
    let mut edges = Vec::with_capacity(n - 1);
    edges.push(Edge { tail: 0, head: 1, weight: one });
    for (i, o) in offsets.into_iter().enumerate() {
        let w = arena.insert_integer(n as u64 + 42 + o);
        edges.push(Edge { tail: 0, head: r + 1 + i, weight: w });
    }
    for v in 1..r {
        edges.push(Edge { tail: v, head: v + 1, weight: one });
    }
    build(arena, n, edges)
}

/// Smallest `d` with `10^d > x`.
fn digits_above(x: u128) -> u32 {
    let mut d = 0;
    while 10u128.pow(d) <= x {
        d += 1;
    }
    d
}

/// Dense graph: a path of `n = k²` vertices where every path vertex has an arc
/// to each of `k` extra vertices.
///
/// Ids: path `0..n` (source 0), extras `n..n+k`. Path arcs weigh `ε`; the arc
/// from the `i`-th path vertex (1-based) to extra `j` weighs
/// `n - i + a_i[j]·δ` with `a_i` a random permutation of `1..=k`. The decimal
/// steps satisfy `k·δ < 1` and `n·ε < δ`, so each extra's tentative distance
/// drops at every path step and final distances are distinct.
pub fn gen_dense(k: usize, seed: u64) -> (Graph, WeightArena) {
    assert!(k >= 1, "dense graph needs k >= 1");
    let n = k * k;
    let q = digits_above(k as u128);
    let p = q + digits_above(n as u128);
    assert!(p <= 18, "k too large for exact weights");
    let arena = WeightArena::new(p);
    let unit = 10u128.pow(p);
    let delta = 10u128.pow(p - q);
    let eps = arena.insert_scaled(1);
    let mut rng = rng(seed);
    let mut perm: Vec<u128> = (1..=k as u128).collect();
    let mut edges = Vec::with_capacity(n - 1 + n * k);
    for i in 0..n {
        if i + 1 < n {
            edges.push(Edge { tail: i, head: i + 1, weight: eps });
        }
        perm.shuffle(&mut rng);
        let base = (n - (i + 1)) as u128 * unit;
        for (j, &a) in perm.iter().enumerate() {
            let w = arena.insert_scaled(base + a * delta);
            edges.push(Edge { tail: i, head: n + j, weight: w });
        }
    }
    build(arena, n + k, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `s` plus `n` leaves with distinct weights.
    Star,
    /// Directed path of `n` vertices.
    Path,
    /// `s` plus `n` spokes: `w(s, v_i) = i`, `w(v_i, v_{i+1}) = 0.5`.
    Fan,
    /// `n` vertices, random arborescence in topological order plus `2n` forward arcs.
    RandomDag,
    /// `n` vertices, random arborescence plus `2n` arbitrary arcs.
    RandomDigraph,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Star, Family::Path, Family::Fan, Family::RandomDag, Family::RandomDigraph];

    pub fn name(self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::Fan => "fan",
            Family::RandomDag => "random_dag",
            Family::RandomDigraph => "random_digraph",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))
    }
}

pub fn gen_family(kind: Family, n: usize, seed: u64) -> Result<(Graph, WeightArena), GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("n must be at least 1".into()));
    }
    Ok(match kind {
        Family::Star => {
            let arena = WeightArena::integral();
            let mut w: Vec<u64> = (1..=n as u64).collect();
            w.shuffle(&mut rng(seed));
            let edges = w
                .into_iter()
                .enumerate()
                .map(|(i, w)| Edge { tail: 0, head: i + 1, weight: arena.insert_integer(w) })
                .collect();
            build(arena, n + 1, edges)
        }
        Family::Path => {
            let arena = WeightArena::integral();
            let mut rng = rng(seed);
            let edges = (1..n)
                .map(|v| Edge { tail: v - 1, head: v, weight: arena.insert_integer(rng.gen_range(1..=9)) })
                .collect();
            build(arena, n, edges)
        }
        Family::Fan => {
            let arena = WeightArena::new(1);
            let half = arena.insert_scaled(5);
            let mut edges: Vec<Edge> = (1..=n)
                .map(|i| Edge { tail: 0, head: i, weight: arena.insert_scaled(10 * i as u128) })
                .collect();
            edges.extend((1..n).map(|i| Edge { tail: i, head: i + 1, weight: half }));
            build(arena, n + 1, edges)
        }
        Family::RandomDag => random_dag(n, 2 * n, seed),
        Family::RandomDigraph => random_digraph(n, 2 * n, seed),
    })
}

/// Weights in `0.001..=1000.000`, wide enough that ties are rare.
fn random_weight(arena: &WeightArena, rng: &mut ChaCha8Rng) -> crate::weights::WeightHandle {
    arena.insert_scaled(rng.gen_range(1..=1_000_000))
}

/// DAG on `0..n` in topological order: each `v > 0` gets an arc from a random
/// earlier vertex, then `extra` arcs `u -> v` with `u < v`. Arc order is shuffled.
pub fn random_dag(n: usize, extra: usize, seed: u64) -> (Graph, WeightArena) {
    assert!(n >= 1);
    let arena = WeightArena::new(3);
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(Edge { tail: u, head: v, weight: random_weight(&arena, &mut rng) });
    }
    if n >= 2 {
        for _ in 0..extra {
            let v = rng.gen_range(1..n);
            let u = rng.gen_range(0..v);
            edges.push(Edge { tail: u, head: v, weight: random_weight(&arena, &mut rng) });
        }
    }
    edges.shuffle(&mut rng);
    build(arena, n, edges)
}

/// Random arborescence rooted at 0 plus `extra` uniform arcs (self-loops and
/// parallel arcs allowed). Arc order is shuffled.
pub fn random_digraph(n: usize, extra: usize, seed: u64) -> (Graph, WeightArena) {
    assert!(n >= 1);
    let arena = WeightArena::new(3);
    let mut rng = rng(seed);
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(&mut rng);
    order.insert(0, 0);
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for i in 1..n {
        let u = order[rng.gen_range(0..i)];
        edges.push(Edge { tail: u, head: order[i], weight: random_weight(&arena, &mut rng) });
    }
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        edges.push(Edge { tail: u, head: v, weight: random_weight(&arena, &mut rng) });
    }
    edges.shuffle(&mut rng);
    build(arena, n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::emit_graph;

    #[test]
    fn broom_counts() {
        let (g, _) = gen_broom(2, 3, 0);
        assert_eq!((g.n(), g.m()), (6, 5));
    }

    #[test]
    fn broom_leaves_are_farther_than_path() {
        let (g, a) = gen_broom(6, 4, 11);
        let audit = a.audit();
        let leaf_min = g.out_edges(0).iter().map(|&e| g.edge(e)).filter(|e| e.head > 4);
        // the farthest path vertex sits at distance r = 4
        for e in leaf_min {
            assert!(audit.scaled(e.weight) > 4);
        }
        let mut ws: Vec<u128> = g.edges().iter().filter(|e| e.head > 4).map(|e| audit.scaled(e.weight)).collect();
        ws.sort();
        ws.dedup();
        assert_eq!(ws.len(), 6);
    }

    #[test]
    fn dense_counts() {
        let (g, _) = gen_dense(2, 0);
        assert_eq!((g.n(), g.m()), (6, 11));
        let (g, _) = gen_dense(8, 0);
        assert_eq!(g.m(), 63 + 64 * 8);
    }

    #[test]
    fn dense_candidates_drop_along_the_path() {
        let k = 5;
        let n = k * k;
        let (g, a) = gen_dense(k, 4);
        let audit = a.audit();
        // path distance of vertex i is i·ε = i scaled units
        for j in 0..k {
            let mut last = u128::MAX;
            for i in 0..n {
                let e = g.out_edges(i).iter().map(|&e| g.edge(e)).find(|e| e.head == n + j).unwrap();
                let cand = i as u128 + audit.scaled(e.weight);
                assert!(cand < last, "extra {j} at step {i}");
                last = cand;
            }
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!("random_dag".parse::<Family>(), Ok(Family::RandomDag));
        assert_eq!("lollipop".parse::<Family>(), Err(GraphError::UnknownFamily("lollipop".into())));
        assert!(gen_family(Family::Star, 0, 0).is_err());
    }

    #[test]
    fn family_shapes() {
        let (g, _) = gen_family(Family::Star, 5, 0).unwrap();
        assert_eq!((g.n(), g.m()), (6, 5));
        let (g, _) = gen_family(Family::Path, 1, 0).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let (g, a) = gen_family(Family::Fan, 4, 0).unwrap();
        assert_eq!((g.n(), g.m()), (5, 7));
        assert_eq!(a.audit().to_decimal(g.edge(4).weight), "0.5");
        let (g, _) = gen_family(Family::RandomDag, 30, 2).unwrap();
        assert!(g.edges().iter().all(|e| e.tail < e.head));
    }

    #[test]
    fn generators_are_deterministic() {
        let text = |seed| {
            let (g, a) = random_digraph(40, 80, seed);
            emit_graph(&g, &a)
        };
        assert_eq!(text(7), text(7));
        assert_ne!(text(7), text(8));
        let (g1, a1) = gen_dense(4, 1);
        let (g2, a2) = gen_dense(4, 1);
        assert_eq!(emit_graph(&g1, &a1), emit_graph(&g2, &a2));
    }
}
