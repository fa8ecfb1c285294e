//! Indexed binary heap. Benchmark baseline only.

use super::{audit_cmp_keys, cmp_entries, Entry, HeapError, Key, MinQueue};
use crate::weights::WeightArena;
use std::cmp::Ordering;

const ABSENT: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryHandle {
    slot: u32,
    generation: u32,
}

#[derive(Clone, Debug, Default)]
pub struct BinaryHeap {
    /// Heap array of slot ids.
    heap: Vec<u32>,
    entries: Vec<Entry>,
    /// Position of each slot in `heap`, `ABSENT` once extracted.
    pos: Vec<usize>,
    generation: Vec<u32>,
    free: Vec<u32>,
    next_time: u64,
}

impl BinaryHeap {
    pub fn new() -> Self {
        Self::default()
    }

    fn less(&self, arena: &WeightArena, i: usize, j: usize) -> bool {
        let a = &self.entries[self.heap[i] as usize];
        let b = &self.entries[self.heap[j] as usize];
        cmp_entries(arena, a, b) == Ordering::Less
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i] as usize] = i;
        self.pos[self.heap[j] as usize] = j;
    }

    fn sift_up(&mut self, arena: &WeightArena, mut i: usize) {
        while i > 0 {
            let p = (i - 1) / 2;
            if !self.less(arena, i, p) {
                break;
            }
            self.swap(i, p);
            i = p;
        }
    }

    fn sift_down(&mut self, arena: &WeightArena, mut i: usize) {
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && self.less(arena, r, l) { r } else { l };
            if !self.less(arena, c, i) {
                break;
            }
            self.swap(i, c);
            i = c;
        }
    }
}

impl MinQueue for BinaryHeap {
    type Handle = BinaryHandle;

    fn insert(&mut self, arena: &WeightArena, key: Key, vertex: u32) -> BinaryHandle {
        let entry = Entry { key, vertex, time: self.next_time };
        self.next_time += 1;
        let slot = match self.free.pop() {
            Some(s) => {
                self.entries[s as usize] = entry;
                s
            }
            None => {
                self.entries.push(entry);
                self.pos.push(ABSENT);
                self.generation.push(0);
                (self.entries.len() - 1) as u32
            }
        };
        let i = self.heap.len();
        self.heap.push(slot);
        self.pos[slot as usize] = i;
        self.sift_up(arena, i);
        BinaryHandle { slot, generation: self.generation[slot as usize] }
    }

    fn find_min(&self) -> Result<(Key, u32), HeapError> {
        let &s = self.heap.first().ok_or(HeapError::Empty)?;
        let e = self.entries[s as usize];
        Ok((e.key, e.vertex))
    }

    fn extract_min(&mut self, arena: &WeightArena) -> Result<(Key, u32), HeapError> {
        if self.heap.is_empty() {
            return Err(HeapError::Empty);
        }
        let last = self.heap.len() - 1;
        self.swap(0, last);
        let s = self.heap.pop().unwrap() as usize;
        self.pos[s] = ABSENT;
        self.generation[s] = self.generation[s].wrapping_add(1);
        self.free.push(s as u32);
        if !self.heap.is_empty() {
            self.sift_down(arena, 0);
        }
        let e = self.entries[s];
        Ok((e.key, e.vertex))
    }

    fn decrease_key(&mut self, arena: &WeightArena, h: BinaryHandle, key: Key) -> Result<(), HeapError> {
        let s = h.slot as usize;
        if self.generation.get(s) != Some(&h.generation) || self.pos[s] == ABSENT {
            return Err(HeapError::StaleHandle);
        }
        let old = self.entries[s].key;
        if old == key {
            return Ok(());
        }
        if audit_cmp_keys(arena, key, old) == Ordering::Greater {
            return Err(HeapError::KeyIncrease);
        }
        self.entries[s].key = key;
        self.sift_up(arena, self.pos[s]);
        Ok(())
    }

    fn len(&self) -> usize {
        self.heap.len()
    }
}
