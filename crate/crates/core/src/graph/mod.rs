//! Weighted multigraphs with a source, generators, text I/O and spanning trees.

mod generators;
mod io;
mod tree;

pub use generators::{gen_broom, gen_dense, gen_family, random_dag, random_digraph, Family};
pub use io::{emit_graph, parse_graph};
pub use tree::{Ancestry, SpanningTree, TreeRole};

use std::cmp::Ordering;
use std::collections::VecDeque;

use thiserror::Error;

use crate::weights::{WeightArena, WeightHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge {tail}->{head} mentions a vertex outside 0..{n}")]
    VertexOutOfRange { tail: usize, head: usize, n: usize },
    #[error("edge {tail}->{head} has a nonpositive weight")]
    NonPositiveWeight { tail: usize, head: usize },
    #[error("vertex {0} is unreachable from the source")]
    Unreachable(usize),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// An arc `tail -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: WeightHandle,
}

/// Read access Dijkstra needs: out-arcs per vertex and a weight per arc.
pub trait Network {
    fn vertex_count(&self) -> usize;
    fn source(&self) -> usize;
    /// Arc ids leaving `u`, in a fixed order.
    fn out_edges(&self, u: usize) -> &[usize];
    fn head(&self, e: usize) -> usize;
    /// The arc's weight. Implementations may spend comparisons the first time.
    fn weight(&self, arena: &WeightArena, e: usize) -> WeightHandle;
}

/// Weighted multigraph whose vertices are all reachable from `source`.
///
/// Undirected graphs store each edge as two opposite arcs `2i` and `2i + 1`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    source: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    by_tail: Vec<usize>,
}

impl Graph {
    /// Builds a directed graph. Weights must be positive and every vertex reachable.
    pub fn directed(
        arena: &WeightArena,
        n: usize,
        source: usize,
        edges: Vec<Edge>,
    ) -> Result<Graph, GraphError> {
        Self::build(arena, n, source, edges, true)
    }

    /// Builds an undirected graph; each edge is stored as two arcs.
    pub fn undirected(
        arena: &WeightArena,
        n: usize,
        source: usize,
        edges: Vec<Edge>,
    ) -> Result<Graph, GraphError> {
        let arcs = edges
            .into_iter()
            .flat_map(|e| [e, Edge { tail: e.head, head: e.tail, weight: e.weight }])
            .collect();
        Self::build(arena, n, source, arcs, false)
    }

    fn build(
        arena: &WeightArena,
        n: usize,
        source: usize,
        edges: Vec<Edge>,
        directed: bool,
    ) -> Result<Graph, GraphError> {
        if source >= n {
            return Err(GraphError::InvalidParameter(format!("source {source} outside 0..{n}")));
        }
        let zero = arena.zero();
        for e in &edges {
            if e.tail >= n || e.head >= n {
                return Err(GraphError::VertexOutOfRange { tail: e.tail, head: e.head, n });
            }
            if arena.audit().compare(e.weight, zero) != Ordering::Greater {
                return Err(GraphError::NonPositiveWeight { tail: e.tail, head: e.head });
            }
        }
        let g = Self::assemble(n, source, edges, directed);
        if let Some(v) = g.first_unreachable() {
            return Err(GraphError::Unreachable(v));
        }
        Ok(g)
    }

    /// Builds the adjacency index without validation.
    pub(crate) fn assemble(n: usize, source: usize, edges: Vec<Edge>, directed: bool) -> Graph {
        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.tail + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut by_tail = vec![0usize; edges.len()];
        for (id, e) in edges.iter().enumerate() {
            by_tail[fill[e.tail]] = id;
            fill[e.tail] += 1;
        }
        Graph { n, directed, source, edges, offsets, by_tail }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs (twice the edge count for undirected graphs).
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn out_edges(&self, u: usize) -> &[usize] {
        &self.by_tail[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Vertices grouped by unweighted distance from the source.
    pub fn bfs_layers(&self) -> Vec<Vec<usize>> {
        let (_, layer) = self.bfs();
        let depth = layer.iter().flatten().copied().max().map_or(0, |d| d + 1);
        let mut layers = vec![Vec::new(); depth];
        for (v, d) in layer.iter().enumerate() {
            if let Some(d) = d {
                layers[*d].push(v);
            }
        }
        layers
    }

    /// Breadth-first spanning tree.
    pub fn bfs_tree(&self) -> SpanningTree {
        let (parent, _) = self.bfs();
        SpanningTree::new(self.source, parent, TreeRole::Bfs).expect("graph is connected from the source")
    }

    fn bfs(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.n];
        let mut layer = vec![None; self.n];
        layer[self.source] = Some(0);
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            let d = layer[u].unwrap();
            for &e in self.out_edges(u) {
                let v = self.edges[e].head;
                if layer[v].is_none() {
                    layer[v] = Some(d + 1);
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        (parent, layer)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let (_, layer) = self.bfs();
        layer.iter().position(Option::is_none)
    }
}

impl Network for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn source(&self) -> usize {
        self.source
    }

    fn out_edges(&self, u: usize) -> &[usize] {
        Graph::out_edges(self, u)
    }

    fn head(&self, e: usize) -> usize {
        self.edges[e].head
    }

    fn weight(&self, _arena: &WeightArena, e: usize) -> WeightHandle {
        self.edges[e].weight
    }
}

/// `|F|`: arcs whose tail is strictly closer to the source than their head.
/// Uses counted comparisons. For undirected graphs this counts edges with
/// unequal endpoint distances, since each edge contributes two arcs.
pub fn forward_edges(g: &Graph, arena: &WeightArena, dist: &[WeightHandle]) -> usize {
    g.edges()
        .iter()
        .filter(|e| arena.compare(dist[e.tail], dist[e.head]) == Ordering::Less)
        .count()
}
