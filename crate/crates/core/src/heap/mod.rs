//! Addressable min-heaps over protected keys.
//!
//! [`fibonacci`] is the inner heap of the working-set construction; [`binary`]
//! and [`pairing`] are baselines for benchmarking Dijkstra.

pub mod binary;
pub mod fibonacci;
pub mod pairing;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::weights::{WeightArena, WeightHandle};

/// A heap key: a protected cell, or the `+∞` sentinel that ranks above every cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Key {
    Finite(WeightHandle),
    Infinite,
}

/// A stored element. Elements are ordered by key, then vertex id, then insertion time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: Key,
    pub vertex: u32,
    pub time: u64,
}

impl Entry {
    /// Stand-in for the minimum of an empty heap.
    pub const EMPTY: Entry = Entry { key: Key::Infinite, vertex: u32::MAX, time: u64::MAX };
}

/// Orders two keys. Comparing against `+∞`, or a handle with itself, is free.
pub fn cmp_keys(arena: &WeightArena, a: Key, b: Key) -> Ordering {
    match (a, b) {
        (Key::Infinite, Key::Infinite) => Ordering::Equal,
        (Key::Infinite, Key::Finite(_)) => Ordering::Greater,
        (Key::Finite(_), Key::Infinite) => Ordering::Less,
        (Key::Finite(x), Key::Finite(y)) if x == y => Ordering::Equal,
        (Key::Finite(x), Key::Finite(y)) => arena.compare(x, y),
    }
}

/// Uncounted variant of [`cmp_keys`] for contract checks and oracles.
pub fn audit_cmp_keys(arena: &WeightArena, a: Key, b: Key) -> Ordering {
    match (a, b) {
        (Key::Infinite, Key::Infinite) => Ordering::Equal,
        (Key::Infinite, Key::Finite(_)) => Ordering::Greater,
        (Key::Finite(_), Key::Infinite) => Ordering::Less,
        (Key::Finite(x), Key::Finite(y)) => arena.audit().compare(x, y),
    }
}

pub fn cmp_entries(arena: &WeightArena, a: &Entry, b: &Entry) -> Ordering {
    cmp_keys(arena, a.key, b.key)
        .then(a.vertex.cmp(&b.vertex))
        .then(a.time.cmp(&b.time))
}

pub fn audit_cmp_entries(arena: &WeightArena, a: &Entry, b: &Entry) -> Ordering {
    audit_cmp_keys(arena, a.key, b.key)
        .then(a.vertex.cmp(&b.vertex))
        .then(a.time.cmp(&b.time))
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum HeapError {
    #[error("heap is empty")]
    Empty,
    #[error("decrease_key would increase the key")]
    KeyIncrease,
    #[error("handle refers to an element that is no longer in the heap")]
    StaleHandle,
}

/// The priority-queue interface Dijkstra runs against.
pub trait MinQueue {
    type Handle: Copy;

    fn insert(&mut self, arena: &WeightArena, key: Key, vertex: u32) -> Self::Handle;
    fn find_min(&self) -> Result<(Key, u32), HeapError>;
    fn extract_min(&mut self, arena: &WeightArena) -> Result<(Key, u32), HeapError>;
    /// Replaces the key of `handle`; the new key must not be larger.
    fn decrease_key(
        &mut self,
        arena: &WeightArena,
        handle: Self::Handle,
        key: Key,
    ) -> Result<(), HeapError>;
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Priority queue choices for Dijkstra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeapKind {
    Workset,
    Fibonacci,
    Binary,
    Pairing,
}

impl HeapKind {
    pub const ALL: [HeapKind; 4] =
        [HeapKind::Workset, HeapKind::Fibonacci, HeapKind::Binary, HeapKind::Pairing];

    pub fn name(self) -> &'static str {
        match self {
            HeapKind::Workset => "workset",
            HeapKind::Fibonacci => "fibonacci",
            HeapKind::Binary => "binary",
            HeapKind::Pairing => "pairing",
        }
    }
}

impl fmt::Display for HeapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeapKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HeapKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown heap kind `{s}`"))
    }
}

#[cfg(test)]
pub(crate) mod testing {
    //! Sorted-list oracle shared by the heap unit tests.

    use super::*;

    /// Replays a random op sequence on `heap` and on a brute-force list.
    pub fn replay_against_oracle<H: MinQueue>(mut heap: H, ops: usize, seed: u64) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let arena = WeightArena::integral();
        // (value, vertex, handle)
        let mut live: Vec<(u64, u32, H::Handle)> = Vec::new();
        let mut next_vertex = 0u32;
        for _ in 0..ops {
            let roll = rng.gen_range(0..10);
            if roll < 4 || live.is_empty() {
                let v = rng.gen_range(0..1000u64);
                let key = Key::Finite(arena.insert_integer(v));
                let h = heap.insert(&arena, key, next_vertex);
                live.push((v, next_vertex, h));
                next_vertex += 1;
            } else if roll < 7 {
                let best = live.iter().enumerate().min_by_key(|(_, e)| (e.0, e.1)).unwrap().0;
                let (v, vertex, _) = live.swap_remove(best);
                let (key, got) = heap.extract_min(&arena).unwrap();
                assert_eq!(got, vertex);
                match key {
                    Key::Finite(h) => assert_eq!(arena.audit().scaled(h), u128::from(v)),
                    Key::Infinite => panic!("finite key expected"),
                }
            } else {
                let i = rng.gen_range(0..live.len());
                let nv = rng.gen_range(0..=live[i].0);
                let key = Key::Finite(arena.insert_integer(nv));
                heap.decrease_key(&arena, live[i].2, key).unwrap();
                live[i].0 = nv;
            }
            assert_eq!(heap.len(), live.len());
            if let Some(e) = live.iter().min_by_key(|e| (e.0, e.1)) {
                assert_eq!(heap.find_min().unwrap().1, e.1);
            }
        }
    }
}
