use crate::graph::{Ancestry, Graph, SpanningTree, TreeRole};

/// Dominator tree with O(1) dominance queries.
#[derive(Clone, Debug)]
pub struct DominatorTree {
    tree: SpanningTree,
    ancestry: Ancestry,
}

impl DominatorTree {
    pub fn idom(&self, v: usize) -> Option<usize> {
        self.tree.parent(v)
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    /// `u` dominates `v` (every vertex dominates itself).
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.ancestry.is_ancestor(u, v)
    }
}

const NONE: usize = usize::MAX;

/// Lengauer-Tarjan with path compression (the simple variant, O(m log n)).
pub fn dominator_tree(g: &Graph) -> DominatorTree {
    let n = g.n();
    let s = g.source();
    // depth-first numbering
    let mut dfn = vec![NONE; n];
    let mut vertex = Vec::with_capacity(n);
    let mut dfs_parent = vec![0usize; n];
    let mut stack = vec![(s, 0usize)];
    dfn[s] = 0;
    vertex.push(s);
    while let Some((v, i)) = stack.last_mut() {
        let out = g.out_edges(*v);
        if *i == out.len() {
            stack.pop();
            continue;
        }
        let w = g.edge(out[*i]).head;
        *i += 1;
        if dfn[w] == NONE {
            dfn[w] = vertex.len();
            dfs_parent[dfn[w]] = dfn[*v];
            vertex.push(w);
            stack.push((w, 0));
        }
    }
    let k = vertex.len();
    assert_eq!(k, n, "every vertex must be reachable from the source");

    let mut pred = vec![Vec::new(); k];
    for e in g.edges() {
        pred[dfn[e.head]].push(dfn[e.tail]);
    }
    let mut semi: Vec<usize> = (0..k).collect();
    let mut label: Vec<usize> = (0..k).collect();
    let mut ancestor = vec![NONE; k];
    let mut idom = vec![0usize; k];
    let mut bucket = vec![Vec::new(); k];
    let mut path = Vec::new();

    let mut eval = |v: usize, ancestor: &mut Vec<usize>, label: &mut Vec<usize>, semi: &[usize]| {
        if ancestor[v] == NONE {
            return v;
        }
        let mut x = v;
        while ancestor[ancestor[x]] != NONE {
            path.push(x);
            x = ancestor[x];
        }
        while let Some(x) = path.pop() {
            let a = ancestor[x];
            if semi[label[a]] < semi[label[x]] {
                label[x] = label[a];
            }
            ancestor[x] = ancestor[a];
        }
        label[v]
    };

    for w in (1..k).rev() {
        for &x in &pred[w] {
            let u = eval(x, &mut ancestor, &mut label, &semi);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        bucket[semi[w]].push(w);
        let p = dfs_parent[w];
        ancestor[w] = p;
        for v in std::mem::take(&mut bucket[p]) {
            let u = eval(v, &mut ancestor, &mut label, &semi);
            idom[v] = if semi[u] < semi[v] { u } else { p };
        }
    }
    for w in 1..k {
        if idom[w] != semi[w] {
            idom[w] = idom[idom[w]];
        }
    }

    let mut parent = vec![None; n];
    for w in 1..k {
        parent[vertex[w]] = Some(vertex[idom[w]]);
    }
    let tree = SpanningTree::new(s, parent, TreeRole::Dominator).expect("immediate dominators form a tree");
    let ancestry = tree.ancestry();
    DominatorTree { tree, ancestry }
}
