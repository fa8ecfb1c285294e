//! Fibonacci heap whose nodes live in a shared [`NodePool`].
//!
//! A [`FibHeap`] is only a root-list pointer and a size, so several heaps can
//! share one pool and [`FibHeap::meld`] is a constant-time splice. Node handles
//! stay valid across melds because the pool slot, not the heap, owns the node.

use super::{audit_cmp_entries, audit_cmp_keys, cmp_entries, Entry, HeapError, Key, MinQueue};
use crate::weights::WeightArena;
use std::cmp::Ordering;

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    entry: Entry,
    parent: u32,
    child: u32,
    left: u32,
    right: u32,
    degree: u32,
    marked: bool,
    live: bool,
    generation: u32,
}

/// Handle to a live node. Becomes stale once the node is extracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeHandle {
    index: u32,
    generation: u32,
}

/// Slab of heap nodes shared by any number of [`FibHeap`]s.
#[derive(Clone, Debug, Default)]
pub struct NodePool {
    nodes: Vec<Node>,
    free: Vec<u32>,
}

impl NodePool {
    pub fn new() -> Self {
        Self::default()
    }

    /// Entry of a live node.
    pub fn entry(&self, h: NodeHandle) -> Result<Entry, HeapError> {
        self.check(h).map(|i| self.nodes[i as usize].entry)
    }

    fn check(&self, h: NodeHandle) -> Result<u32, HeapError> {
        match self.nodes.get(h.index as usize) {
            Some(n) if n.live && n.generation == h.generation => Ok(h.index),
            _ => Err(HeapError::StaleHandle),
        }
    }

    fn alloc(&mut self, entry: Entry) -> u32 {
        let node = |generation| Node {
            entry,
            parent: NIL,
            child: NIL,
            left: NIL,
            right: NIL,
            degree: 0,
            marked: false,
            live: true,
            generation,
        };
        match self.free.pop() {
            Some(i) => {
                let g = self.nodes[i as usize].generation;
                self.nodes[i as usize] = node(g);
                i
            }
            None => {
                let i = u32::try_from(self.nodes.len()).expect("node pool exceeds 2^32 slots");
                self.nodes.push(node(0));
                i
            }
        }
    }

    fn release(&mut self, i: u32) {
        let n = &mut self.nodes[i as usize];
        n.live = false;
        n.generation = n.generation.wrapping_add(1);
        self.free.push(i);
    }

    fn handle(&self, i: u32) -> NodeHandle {
        NodeHandle { index: i, generation: self.nodes[i as usize].generation }
    }

    fn n(&self, i: u32) -> &Node {
        &self.nodes[i as usize]
    }

    fn n_mut(&mut self, i: u32) -> &mut Node {
        &mut self.nodes[i as usize]
    }

    /// Makes `i` a singleton circular list.
    fn make_singleton(&mut self, i: u32) {
        let n = self.n_mut(i);
        n.left = i;
        n.right = i;
    }

    /// Splices the circular lists containing `a` and `b` into one.
    fn splice(&mut self, a: u32, b: u32) {
        let a_right = self.n(a).right;
        let b_left = self.n(b).left;
        self.n_mut(a).right = b;
        self.n_mut(b).left = a;
        self.n_mut(b_left).right = a_right;
        self.n_mut(a_right).left = b_left;
    }

    /// Unlinks `i` from its circular list, leaving it a singleton.
    fn unlink(&mut self, i: u32) {
        let (l, r) = (self.n(i).left, self.n(i).right);
        self.n_mut(l).right = r;
        self.n_mut(r).left = l;
        self.make_singleton(i);
    }

    fn siblings(&self, start: u32) -> Vec<u32> {
        let mut out = Vec::new();
        if start == NIL {
            return out;
        }
        let mut cur = start;
        loop {
            out.push(cur);
            cur = self.n(cur).right;
            if cur == start {
                break;
            }
        }
        out
    }
}

/// A Fibonacci heap: a root-list pointer plus a size, nodes held by a [`NodePool`].
#[derive(Clone, Debug)]
pub struct FibHeap {
    min: u32,
    len: usize,
}

impl Default for FibHeap {
    fn default() -> Self {
        Self::new()
    }
}

impl FibHeap {
    pub fn new() -> Self {
        FibHeap { min: NIL, len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Handle of the current minimum node.
    pub fn min_handle(&self, pool: &NodePool) -> Option<NodeHandle> {
        (self.min != NIL).then(|| pool.handle(self.min))
    }

    pub fn find_min(&self, pool: &NodePool) -> Option<Entry> {
        (self.min != NIL).then(|| pool.n(self.min).entry)
    }

    pub fn insert(&mut self, pool: &mut NodePool, arena: &WeightArena, entry: Entry) -> NodeHandle {
        let i = pool.alloc(entry);
        pool.make_singleton(i);
        self.add_root(pool, arena, i);
        self.len += 1;
        pool.handle(i)
    }

    /// Absorbs `other`, which must share `pool`.
    pub fn meld(&mut self, pool: &mut NodePool, arena: &WeightArena, other: FibHeap) {
        if other.min == NIL {
            return;
        }
        if self.min == NIL {
            *self = other;
            return;
        }
        pool.splice(self.min, other.min);
        if cmp_entries(arena, &pool.n(other.min).entry, &pool.n(self.min).entry) == Ordering::Less {
            self.min = other.min;
        }
        self.len += other.len;
    }

    pub fn extract_min(&mut self, pool: &mut NodePool, arena: &WeightArena) -> Option<Entry> {
        if self.min == NIL {
            return None;
        }
        let z = self.min;
        let entry = pool.n(z).entry;
        for c in pool.siblings(pool.n(z).child) {
            let n = pool.n_mut(c);
            n.parent = NIL;
            n.marked = false;
        }
        let child = pool.n(z).child;
        if child != NIL {
            pool.splice(z, child);
        }
        let next = pool.n(z).right;
        pool.unlink(z);
        self.len -= 1;
        pool.release(z);
        if next == z {
            self.min = NIL;
        } else {
            self.min = next;
            self.consolidate(pool, arena);
        }
        Some(entry)
    }

    pub fn decrease_key(
        &mut self,
        pool: &mut NodePool,
        arena: &WeightArena,
        h: NodeHandle,
        key: Key,
    ) -> Result<(), HeapError> {
        let x = pool.check(h)?;
        let old = pool.n(x).entry.key;
        if old == key {
            return Ok(());
        }
        if audit_cmp_keys(arena, key, old) == Ordering::Greater {
            return Err(HeapError::KeyIncrease);
        }
        pool.n_mut(x).entry.key = key;
        let p = pool.n(x).parent;
        if p != NIL && cmp_entries(arena, &pool.n(x).entry, &pool.n(p).entry) == Ordering::Less {
            self.cut(pool, x, p);
            self.cascading_cut(pool, p);
        }
        if x != self.min
            && pool.n(x).parent == NIL
            && cmp_entries(arena, &pool.n(x).entry, &pool.n(self.min).entry) == Ordering::Less
        {
            self.min = x;
        }
        Ok(())
    }

    /// Entries of all nodes in this heap, in no particular order.
    pub fn entries(&self, pool: &NodePool) -> Vec<Entry> {
        let mut out = Vec::with_capacity(self.len);
        let mut stack = pool.siblings(self.min);
        while let Some(i) = stack.pop() {
            out.push(pool.n(i).entry);
            stack.extend(pool.siblings(pool.n(i).child));
        }
        out
    }

    /// Full structural check: heap order, parent links, degrees, size, minimum.
    pub fn check(&self, pool: &NodePool, arena: &WeightArena) -> Result<(), String> {
        let mut count = 0usize;
        let roots = pool.siblings(self.min);
        let mut stack: Vec<u32> = roots.clone();
        for &r in &roots {
            if pool.n(r).parent != NIL {
                return Err("root with a parent".into());
            }
            if audit_cmp_entries(arena, &pool.n(r).entry, &pool.n(self.min).entry) == Ordering::Less {
                return Err("min pointer is not minimal".into());
            }
        }
        while let Some(i) = stack.pop() {
            let node = pool.n(i);
            if !node.live {
                return Err("dead node reachable".into());
            }
            count += 1;
            let kids = pool.siblings(node.child);
            if kids.len() != node.degree as usize {
                return Err("degree mismatch".into());
            }
            for &c in &kids {
                if pool.n(c).parent != i {
                    return Err("broken parent link".into());
                }
                if audit_cmp_entries(arena, &pool.n(c).entry, &node.entry) == Ordering::Less {
                    return Err("heap order violated".into());
                }
            }
            stack.extend(kids);
        }
        if count != self.len {
            return Err(format!("size {} but {} nodes reachable", self.len, count));
        }
        Ok(())
    }

    fn add_root(&mut self, pool: &mut NodePool, arena: &WeightArena, i: u32) {
        if self.min == NIL {
            self.min = i;
            return;
        }
        pool.splice(self.min, i);
        if cmp_entries(arena, &pool.n(i).entry, &pool.n(self.min).entry) == Ordering::Less {
            self.min = i;
        }
    }

    fn consolidate(&mut self, pool: &mut NodePool, arena: &WeightArena) {
        let mut by_degree: Vec<u32> = Vec::new();
        for mut x in pool.siblings(self.min) {
            pool.make_singleton(x);
            pool.n_mut(x).parent = NIL;
            let mut d = pool.n(x).degree as usize;
            loop {
                if by_degree.len() <= d {
                    by_degree.resize(d + 1, NIL);
                }
                let y = by_degree[d];
                if y == NIL {
                    break;
                }
                by_degree[d] = NIL;
                let (root, child) =
                    if cmp_entries(arena, &pool.n(y).entry, &pool.n(x).entry) == Ordering::Less {
                        (y, x)
                    } else {
                        (x, y)
                    };
                Self::link(pool, child, root);
                x = root;
                d += 1;
            }
            by_degree[d] = x;
        }
        self.min = NIL;
        for r in by_degree.into_iter().filter(|&r| r != NIL) {
            self.add_root(pool, arena, r);
        }
    }

    /// Makes root `y` a child of root `x`.
    fn link(pool: &mut NodePool, y: u32, x: u32) {
        let c = pool.n(x).child;
        if c == NIL {
            pool.n_mut(x).child = y;
        } else {
            pool.splice(c, y);
        }
        let ny = pool.n_mut(y);
        ny.parent = x;
        ny.marked = false;
        pool.n_mut(x).degree += 1;
    }

    fn cut(&mut self, pool: &mut NodePool, x: u32, p: u32) {
        let right = pool.n(x).right;
        let np = pool.n_mut(p);
        np.degree -= 1;
        if np.child == x {
            np.child = if right == x { NIL } else { right };
        }
        pool.unlink(x);
        let nx = pool.n_mut(x);
        nx.parent = NIL;
        nx.marked = false;
        // The new root is compared against the minimum by the caller.
        pool.splice(self.min, x);
    }

    fn cascading_cut(&mut self, pool: &mut NodePool, mut y: u32) {
        loop {
            let p = pool.n(y).parent;
            if p == NIL {
                return;
            }
            if !pool.n(y).marked {
                pool.n_mut(y).marked = true;
                return;
            }
            self.cut(pool, y, p);
            y = p;
        }
    }
}

/// Stand-alone Fibonacci heap with its own pool, usable by Dijkstra.
#[derive(Clone, Debug, Default)]
pub struct FibonacciHeap {
    pool: NodePool,
    heap: FibHeap,
    next_time: u64,
}

impl FibonacciHeap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&self, arena: &WeightArena) -> Result<(), String> {
        self.heap.check(&self.pool, arena)
    }
}

impl MinQueue for FibonacciHeap {
    type Handle = NodeHandle;

    fn insert(&mut self, arena: &WeightArena, key: Key, vertex: u32) -> NodeHandle {
        let time = self.next_time;
        self.next_time += 1;
        self.heap.insert(&mut self.pool, arena, Entry { key, vertex, time })
    }

    fn find_min(&self) -> Result<(Key, u32), HeapError> {
        self.heap.find_min(&self.pool).map(|e| (e.key, e.vertex)).ok_or(HeapError::Empty)
    }

    fn extract_min(&mut self, arena: &WeightArena) -> Result<(Key, u32), HeapError> {
        self.heap
            .extract_min(&mut self.pool, arena)
            .map(|e| (e.key, e.vertex))
            .ok_or(HeapError::Empty)
    }

    fn decrease_key(&mut self, arena: &WeightArena, h: NodeHandle, key: Key) -> Result<(), HeapError> {
        self.heap.decrease_key(&mut self.pool, arena, h, key)
    }

    fn len(&self) -> usize {
        self.heap.len()
    }
}
