use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeRole {
    Sssp,
    Exploration,
    Dominator,
    Bfs,
}

impl fmt::Display for TreeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeRole::Sssp => "sssp",
            TreeRole::Exploration => "exploration",
            TreeRole::Dominator => "dominator",
            TreeRole::Bfs => "bfs",
        })
    }
}

/// Rooted spanning tree given by parent links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<usize>>,
    role: TreeRole,
}

/// Preorder entry/exit times, for O(1) ancestor queries.
#[derive(Clone, Debug)]
pub struct Ancestry {
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl Ancestry {
    /// `u` is an ancestor of `v` or equal to it.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.tin[u] <= self.tin[v] && self.tout[v] <= self.tout[u]
    }
}

impl SpanningTree {
    /// Fails unless the links form one tree rooted at `root` covering every vertex.
    pub fn new(root: usize, parent: Vec<Option<usize>>, role: TreeRole) -> Result<Self, String> {
        let n = parent.len();
        if root >= n {
            return Err(format!("root {root} outside 0..{n}"));
        }
        if parent[root].is_some() {
            return Err("root has a parent".into());
        }
        for (v, p) in parent.iter().enumerate() {
            match p {
                None if v != root => return Err(format!("vertex {v} has no parent")),
                Some(p) if *p >= n => return Err(format!("parent of {v} out of range")),
                _ => {}
            }
        }
        let t = SpanningTree { root, parent, role };
        let seen = t.preorder().len();
        if seen != n {
            return Err(format!("parent links contain a cycle ({seen} of {n} vertices reach the root)"));
        }
        Ok(t)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn role(&self) -> TreeRole {
        self.role
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Children lists, each in increasing vertex order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }

    /// Vertices in depth-first preorder from the root.
    pub fn preorder(&self) -> Vec<usize> {
        let ch = self.children();
        let mut order = Vec::with_capacity(self.parent.len());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(ch[u].iter().rev());
        }
        order
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.parent.len()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.parent.len()];
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    pub fn ancestry(&self) -> Ancestry {
        let ch = self.children();
        let n = self.parent.len();
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut clock = 0;
        let mut stack = vec![(self.root, false)];
        while let Some((u, done)) = stack.pop() {
            if done {
                tout[u] = clock;
                clock += 1;
                continue;
            }
            tin[u] = clock;
            clock += 1;
            stack.push((u, true));
            stack.extend(ch[u].iter().rev().map(|&c| (c, false)));
        }
        Ancestry { tin, tout }
    }

    /// Same parent links, ignoring the role tag.
    pub fn same_shape(&self, other: &SpanningTree) -> bool {
        self.root == other.root && self.parent == other.parent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_trees() {
        assert!(SpanningTree::new(0, vec![None, Some(2), Some(1)], TreeRole::Bfs).is_err());
        assert!(SpanningTree::new(0, vec![None, None], TreeRole::Bfs).is_err());
        assert!(SpanningTree::new(0, vec![Some(1), Some(0)], TreeRole::Bfs).is_err());
        assert!(SpanningTree::new(0, vec![None, Some(7)], TreeRole::Bfs).is_err());
    }

    #[test]
    fn orders_and_ancestry() {
        //     0
        //    / \
        //   1   3
        //   |
        //   2
        let t = SpanningTree::new(0, vec![None, Some(0), Some(1), Some(0)], TreeRole::Sssp).unwrap();
        assert_eq!(t.preorder(), vec![0, 1, 2, 3]);
        assert_eq!(t.subtree_sizes(), vec![4, 2, 1, 1]);
        assert_eq!(t.depths(), vec![0, 1, 2, 1]);
        let a = t.ancestry();
        assert!(a.is_ancestor(0, 2) && a.is_ancestor(1, 2) && a.is_ancestor(2, 2));
        assert!(!a.is_ancestor(3, 2) && !a.is_ancestor(2, 1));
    }
}
