//! Two-pass pairing heap. Benchmark baseline only.

use super::{audit_cmp_keys, cmp_entries, Entry, HeapError, Key, MinQueue};
use crate::weights::WeightArena;
use std::cmp::Ordering;

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    entry: Entry,
    child: u32,
    next: u32,
    /// Previous sibling, or the parent for a first child.
    prev: u32,
    live: bool,
    generation: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingHandle {
    index: u32,
    generation: u32,
}

#[derive(Clone, Debug)]
pub struct PairingHeap {
    nodes: Vec<Node>,
    free: Vec<u32>,
    root: u32,
    len: usize,
    next_time: u64,
}

impl Default for PairingHeap {
    fn default() -> Self {
        Self::new()
    }
}

impl PairingHeap {
    pub fn new() -> Self {
        PairingHeap { nodes: Vec::new(), free: Vec::new(), root: NIL, len: 0, next_time: 0 }
    }

    fn check(&self, h: PairingHandle) -> Result<u32, HeapError> {
        match self.nodes.get(h.index as usize) {
            Some(n) if n.live && n.generation == h.generation => Ok(h.index),
            _ => Err(HeapError::StaleHandle),
        }
    }

    fn less(&self, arena: &WeightArena, a: u32, b: u32) -> bool {
        cmp_entries(arena, &self.nodes[a as usize].entry, &self.nodes[b as usize].entry)
            == Ordering::Less
    }

    /// Links two detached roots and returns the winner.
    fn link(&mut self, arena: &WeightArena, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        let (win, lose) = if self.less(arena, b, a) { (b, a) } else { (a, b) };
        let first = self.nodes[win as usize].child;
        {
            let l = &mut self.nodes[lose as usize];
            l.next = first;
            l.prev = win;
        }
        if first != NIL {
            self.nodes[first as usize].prev = lose;
        }
        self.nodes[win as usize].child = lose;
        let w = &mut self.nodes[win as usize];
        w.next = NIL;
        w.prev = NIL;
        win
    }

    /// Detaches `x` (not the root) from its parent's child list.
    fn detach(&mut self, x: u32) {
        let (prev, next) = (self.nodes[x as usize].prev, self.nodes[x as usize].next);
        if self.nodes[prev as usize].child == x {
            self.nodes[prev as usize].child = next;
        } else {
            self.nodes[prev as usize].next = next;
        }
        if next != NIL {
            self.nodes[next as usize].prev = prev;
        }
        let n = &mut self.nodes[x as usize];
        n.prev = NIL;
        n.next = NIL;
    }

    fn merge_pairs(&mut self, arena: &WeightArena, first: u32) -> u32 {
        let mut pairs = Vec::new();
        let mut cur = first;
        while cur != NIL {
            let a = cur;
            let b = self.nodes[a as usize].next;
            let after = if b == NIL { NIL } else { self.nodes[b as usize].next };
            for x in [a, b] {
                if x != NIL {
                    self.nodes[x as usize].next = NIL;
                    self.nodes[x as usize].prev = NIL;
                }
            }
            pairs.push(self.link(arena, a, b));
            cur = after;
        }
        let mut acc = NIL;
        while let Some(p) = pairs.pop() {
            acc = self.link(arena, p, acc);
        }
        acc
    }
}

impl MinQueue for PairingHeap {
    type Handle = PairingHandle;

    fn insert(&mut self, arena: &WeightArena, key: Key, vertex: u32) -> PairingHandle {
        let entry = Entry { key, vertex, time: self.next_time };
        self.next_time += 1;
        let node = |generation| Node { entry, child: NIL, next: NIL, prev: NIL, live: true, generation };
        let i = match self.free.pop() {
            Some(i) => {
                let g = self.nodes[i as usize].generation;
                self.nodes[i as usize] = node(g);
                i
            }
            None => {
                self.nodes.push(node(0));
                (self.nodes.len() - 1) as u32
            }
        };
        self.root = self.link(arena, self.root, i);
        self.len += 1;
        PairingHandle { index: i, generation: self.nodes[i as usize].generation }
    }

    fn find_min(&self) -> Result<(Key, u32), HeapError> {
        if self.root == NIL {
            return Err(HeapError::Empty);
        }
        let e = self.nodes[self.root as usize].entry;
        Ok((e.key, e.vertex))
    }

    fn extract_min(&mut self, arena: &WeightArena) -> Result<(Key, u32), HeapError> {
        if self.root == NIL {
            return Err(HeapError::Empty);
        }
        let r = self.root;
        let e = self.nodes[r as usize].entry;
        let first = self.nodes[r as usize].child;
        self.root = self.merge_pairs(arena, first);
        let n = &mut self.nodes[r as usize];
        n.live = false;
        n.generation = n.generation.wrapping_add(1);
        self.free.push(r);
        self.len -= 1;
        Ok((e.key, e.vertex))
    }

    fn decrease_key(&mut self, arena: &WeightArena, h: PairingHandle, key: Key) -> Result<(), HeapError> {
        let x = self.check(h)?;
        let old = self.nodes[x as usize].entry.key;
        if old == key {
            return Ok(());
        }
        if audit_cmp_keys(arena, key, old) == Ordering::Greater {
            return Err(HeapError::KeyIncrease);
        }
        self.nodes[x as usize].entry.key = key;
        if x != self.root {
            self.detach(x);
            self.root = self.link(arena, self.root, x);
        }
        Ok(())
    }

    fn len(&self) -> usize {
        self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::testing::replay_against_oracle;

    #[test]
    fn random_ops_match_oracle() {
        for seed in 0..4 {
            replay_against_oracle(PairingHeap::new(), 10_000, seed);
        }
    }
}
