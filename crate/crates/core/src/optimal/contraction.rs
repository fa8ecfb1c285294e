use std::cell::Cell;
use std::cmp::Ordering;

use super::{DominatorTree, OptimalError};
use crate::graph::{Edge, Graph, Network, SpanningTree, TreeRole};
use crate::weights::{WeightArena, WeightHandle};

/// Drops every arc `uv` where `v` dominates `u`. Returns the filtered graph
/// and, per kept arc, its id in `g`.
pub fn drop_back_edges(g: &Graph, d: &DominatorTree) -> (Graph, Vec<usize>) {
    let kept: Vec<usize> = (0..g.m()).filter(|&e| !d.dominates(g.edge(e).head, g.edge(e).tail)).collect();
    let edges = kept.iter().map(|&e| g.edge(e)).collect();
    (Graph::assemble(g.n(), g.source(), edges, true), kept)
}

/// How original vertices and arcs map onto the contracted multigraph.
#[derive(Clone, Debug)]
pub struct ContractionRecord {
    /// Contracted vertex of each original vertex.
    pub phi: Vec<usize>,
    /// Original vertices of each contracted vertex, chain order.
    pub members: Vec<Vec<usize>>,
    /// Distance from the chain head, `None` for the head itself.
    pub prefix: Vec<Option<WeightHandle>>,
    /// Arc entering each non-head chain vertex from its predecessor.
    pub link_arc: Vec<Option<usize>>,
    /// Arc of the input graph behind each contracted arc.
    pub arc_origin: Vec<usize>,
    /// Dominator tree of the contracted graph, maintained through contraction.
    pub dominators: SpanningTree,
    /// Comparisons spent choosing among parallel chain links.
    pub link_comparisons: u64,
}

/// Collapses every maximal chain of single-child dominator-tree vertices.
///
/// `g` must already be free of back edges. An arc `x -> y` leaving a chain is
/// reweighted to `prefix(x) + w(x, y)` with additions only. Parallel arcs on
/// a chain link are resolved by taking their minimum.
pub fn contract_chains(
    g: &Graph,
    arena: &WeightArena,
    d: &DominatorTree,
) -> Result<(Graph, ContractionRecord), OptimalError> {
    let n = g.n();
    let dt = d.tree();
    let children = dt.children();
    let mut phi = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut head_of_chain = vec![true; n];
    for v in dt.preorder() {
        match dt.parent(v) {
            Some(u) if children[u].len() == 1 => {
                phi[v] = phi[u];
                head_of_chain[v] = false;
                members[phi[v]].push(v);
            }
            _ => {
                phi[v] = members.len();
                members.push(vec![v]);
            }
        }
    }

    let mut into = vec![Vec::new(); n];
    for (id, e) in g.edges().iter().enumerate() {
        into[e.head].push(id);
    }
    let mut link_arc = vec![None; n];
    let mut link_comparisons = 0;
    let ancestry = dt.ancestry();
    for v in 0..n {
        if head_of_chain[v] {
            continue;
        }
        let u = dt.parent(v).unwrap();
        if into[v].is_empty() || into[v].iter().any(|&e| g.edge(e).tail != u) {
            return Err(OptimalError::Invariant(format!("chain link {u}->{v} is not the only way into {v}")));
        }
        if let Some(&e) = g
            .out_edges(u)
            .iter()
            .find(|&&e| g.edge(e).head != v && ancestry.is_ancestor(v, g.edge(e).head))
        {
            return Err(OptimalError::Invariant(format!(
                "arc {u}->{} skips into the subtree of {v}",
                g.edge(e).head
            )));
        }
        let mut best = into[v][0];
        for &e in &into[v][1..] {
            link_comparisons += 1;
            if arena.compare(g.edge(e).weight, g.edge(best).weight) == Ordering::Less {
                best = e;
            }
        }
        link_arc[v] = Some(best);
    }

    let mut prefix: Vec<Option<WeightHandle>> = vec![None; n];
    for v in dt.preorder() {
        if let Some(e) = link_arc[v] {
            let w = g.edge(e).weight;
            prefix[v] = Some(match prefix[dt.parent(v).unwrap()] {
                None => w,
                Some(p) => arena.add(p, w),
            });
        }
    }

    let mut arcs = Vec::new();
    let mut arc_origin = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if phi[e.tail] == phi[e.head] {
            continue;
        }
        let weight = match prefix[e.tail] {
            None => e.weight,
            Some(p) => arena.add(p, e.weight),
        };
        arcs.push(Edge { tail: phi[e.tail], head: phi[e.head], weight });
        arc_origin.push(id);
    }

    let k = members.len();
    let parents: Vec<Option<usize>> =
        members.iter().map(|m| dt.parent(m[0]).map(|p| phi[p])).collect();
    let dominators =
        SpanningTree::new(phi[g.source()], parents, TreeRole::Dominator).map_err(OptimalError::Invariant)?;
    let contracted = Graph::assemble(k, phi[g.source()], arcs, true);
    Ok((
        contracted,
        ContractionRecord { phi, members, prefix, link_arc, arc_origin, dominators, link_comparisons },
    ))
}

/// Simple graph over a multigraph: one arc per `(tail, head)` pair whose
/// weight is the group minimum, computed on first access.
#[derive(Debug)]
pub struct Deduplicated {
    n: usize,
    source: usize,
    heads: Vec<usize>,
    groups: Vec<Vec<usize>>,
    /// `0..groups.len()`; groups are numbered contiguously per tail.
    ids: Vec<usize>,
    offsets: Vec<usize>,
    weights: Vec<WeightHandle>,
    cache: Vec<Cell<Option<(WeightHandle, usize)>>>,
    spent: Cell<u64>,
}

/// Groups parallel arcs. No comparisons happen until weights are read.
pub fn deduplicate(multi: &Graph) -> Deduplicated {
    let mut ids: Vec<usize> = (0..multi.m()).collect();
    ids.sort_by_key(|&e| (multi.edge(e).tail, multi.edge(e).head, e));
    let mut heads = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut offsets = vec![0usize; multi.n() + 1];
    let mut last = None;
    for e in ids {
        let Edge { tail, head, .. } = multi.edge(e);
        if last == Some((tail, head)) {
            groups.last_mut().unwrap().push(e);
        } else {
            heads.push(head);
            groups.push(vec![e]);
            offsets[tail + 1] += 1;
            last = Some((tail, head));
        }
    }
    for i in 0..multi.n() {
        offsets[i + 1] += offsets[i];
    }
    let cache = (0..groups.len()).map(|_| Cell::new(None)).collect();
    Deduplicated {
        n: multi.n(),
        source: multi.source(),
        heads,
        ids: (0..groups.len()).collect(),
        groups,
        offsets,
        weights: multi.edges().iter().map(|e| e.weight).collect(),
        cache,
        spent: Cell::new(0),
    }
}

impl Deduplicated {
    pub fn arc_count(&self) -> usize {
        self.groups.len()
    }

    /// Multigraph arcs merged into arc `e`.
    pub fn group(&self, e: usize) -> &[usize] {
        &self.groups[e]
    }

    /// Comparisons spent on group minima so far.
    pub fn comparisons(&self) -> u64 {
        self.spent.get()
    }

    /// The multigraph arc achieving the minimum, if it has been computed.
    pub fn argmin(&self, e: usize) -> Option<usize> {
        self.cache[e].get().map(|(_, a)| a)
    }

    pub fn is_evaluated(&self, e: usize) -> bool {
        self.cache[e].get().is_some()
    }
}

impl Network for Deduplicated {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn source(&self) -> usize {
        self.source
    }

    fn out_edges(&self, u: usize) -> &[usize] {
        &self.ids[self.offsets[u]..self.offsets[u + 1]]
    }

    fn head(&self, e: usize) -> usize {
        self.heads[e]
    }

    fn weight(&self, arena: &WeightArena, e: usize) -> WeightHandle {
        if let Some((w, _)) = self.cache[e].get() {
            return w;
        }
        let group = &self.groups[e];
        let mut best = group[0];
        for &a in &group[1..] {
            if arena.compare(self.weights[a], self.weights[best]) == Ordering::Less {
                best = a;
            }
        }
        self.spent.set(self.spent.get() + group.len() as u64 - 1);
        let w = self.weights[best];
        self.cache[e].set(Some((w, best)));
        w
    }
}
