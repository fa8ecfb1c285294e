//! Priority queue with the working-set property.
//!
//! Elements live in Fibonacci heaps `H_0, H_1, …` where `H_r` holds at most
//! `2^(2^r)` elements and older elements sit in higher ranks. An insertion enters
//! as a rank `-1` carry and cascades upward; extracting `x` touches only the rank
//! holding it, so its cost depends on how many elements were inserted after `x`
//! and are still present, not on the total size.
//!
//! `U` maps the insertion-time span of every nonempty heap to that heap, which is
//! how decrease-key finds the rank of an element. `M` keeps the per-rank minima.

use std::cmp::Ordering;

use crate::auxiliary::{IntervalMap, MinKeeper, Order};
use crate::heap::fibonacci::{FibHeap, NodeHandle, NodePool};
use crate::heap::{audit_cmp_entries, cmp_entries, Entry, HeapError, Key, MinQueue};
use crate::weights::WeightArena;

/// Handle returned by [`WorkSetHeap::insert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementHandle {
    node: NodeHandle,
    time: u64,
}

impl ElementHandle {
    /// Insertion time `t(x)`.
    pub fn time(&self) -> u64 {
        self.time
    }
}

/// An extraction together with the rank it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extracted {
    pub key: Key,
    pub vertex: u32,
    pub time: u64,
    pub rank: usize,
}

/// Size cap `2^(2^r)` of rank `r`.
pub fn rank_cap(r: usize) -> u128 {
    if r >= 7 {
        u128::MAX
    } else {
        1u128 << (1u32 << r)
    }
}

struct EntryOrder<'a>(&'a WeightArena);

impl Order<Entry> for EntryOrder<'_> {
    fn cmp(&self, a: &Entry, b: &Entry) -> Ordering {
        cmp_entries(self.0, a, b)
    }

    fn audit(&self, a: &Entry, b: &Entry) -> Ordering {
        audit_cmp_entries(self.0, a, b)
    }
}

/// One inner heap with its insertion-time span `[start, end)` and current rank.
#[derive(Clone, Debug)]
struct Slot {
    heap: FibHeap,
    start: u64,
    end: u64,
    rank: usize,
}

#[derive(Clone, Debug, Default)]
pub struct WorkSetHeap {
    pool: NodePool,
    slots: Vec<Slot>,
    free_slots: Vec<usize>,
    /// Rank to slot; trailing ranks are always nonempty.
    ranks: Vec<Option<usize>>,
    /// `U`: insertion-time span to slot.
    spans: IntervalMap<usize>,
    /// `M`: per-rank minima, [`Entry::EMPTY`] for empty ranks.
    minima: MinKeeper<Entry>,
    next_time: u64,
    len: usize,
}

impl WorkSetHeap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Highest nonempty rank.
    pub fn max_rank(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    /// `|H_r|` for every rank.
    pub fn rank_sizes(&self) -> Vec<usize> {
        (0..self.ranks.len()).map(|r| self.size(r)).collect()
    }

    /// Rank currently holding `h`, looked up through `U`.
    pub fn rank_of(&self, h: ElementHandle) -> Result<usize, HeapError> {
        self.pool.entry(h.node)?;
        let iv = self.spans.find(h.time).ok_or(HeapError::StaleHandle)?;
        Ok(self.slots[iv.payload].rank)
    }

    pub fn insert(&mut self, arena: &WeightArena, key: Key, vertex: u32) -> ElementHandle {
        let time = self.next_time;
        self.next_time += 1;
        let mut heap = FibHeap::new();
        let node = heap.insert(&mut self.pool, arena, Entry { key, vertex, time });
        let mut carry = Some(self.new_slot(heap, time, time + 1));
        let mut prefix = Vec::new();
        let mut r = 0;
        while let Some(c) = carry {
            carry = self.promotion_step(arena, r, c);
            prefix.push(self.rank_min(r));
            r += 1;
        }
        self.minima.change_prefix(&prefix, &EntryOrder(arena));
        self.len += 1;
        self.debug_check(arena);
        ElementHandle { node, time }
    }

    pub fn find_min(&self) -> Result<(Key, u32), HeapError> {
        let r = self.minima.find_min().map_err(|_| HeapError::Empty)?;
        let e = self.minima.values()[r];
        Ok((e.key, e.vertex))
    }

    pub fn extract_min(&mut self, arena: &WeightArena) -> Result<Extracted, HeapError> {
        if self.len == 0 {
            return Err(HeapError::Empty);
        }
        let r = self.minima.find_min().map_err(|_| HeapError::Empty)?;
        let id = self.ranks[r].expect("minimum keeper points at a nonempty rank");
        let e = self.slots[id].heap.extract_min(&mut self.pool, arena).expect("nonempty rank");
        self.len -= 1;
        if self.slots[id].heap.is_empty() {
            let s = &self.slots[id];
            self.spans.remove(s.start, s.end);
            self.ranks[r] = None;
            self.free_slots.push(id);
        }
        let mut prefix = self.minima.values()[..r].to_vec();
        prefix.push(self.rank_min(r));
        self.minima.change_prefix(&prefix, &EntryOrder(arena));
        self.restore_top(arena, r);
        self.debug_check(arena);
        Ok(Extracted { key: e.key, vertex: e.vertex, time: e.time, rank: r })
    }

    pub fn decrease_key(&mut self, arena: &WeightArena, h: ElementHandle, key: Key) -> Result<(), HeapError> {
        let entry = self.pool.entry(h.node)?;
        if entry.time != h.time {
            return Err(HeapError::StaleHandle);
        }
        if entry.key == key {
            return Ok(());
        }
        let id = self.spans.find(h.time).ok_or(HeapError::StaleHandle)?.payload;
        let slot = &mut self.slots[id];
        slot.heap.decrease_key(&mut self.pool, arena, h.node, key)?;
        if slot.heap.min_handle(&self.pool) == Some(h.node) {
            let r = slot.rank;
            let m = Entry { key, ..entry };
            self.minima.decrease(r, m, &EntryOrder(arena)).expect("rank minimum only decreases");
        }
        self.debug_check(arena);
        Ok(())
    }

    /// Melds `carry` into rank `r` if the cap allows, otherwise swaps it in and
    /// returns the displaced heap as the next carry.
    fn promotion_step(&mut self, arena: &WeightArena, r: usize, carry: usize) -> Option<usize> {
        if self.ranks.len() == r {
            self.ranks.push(None);
        }
        let joint = self.size(r) + self.slots[carry].heap.len();
        if joint as u128 <= rank_cap(r) {
            match self.ranks[r] {
                None => {
                    self.ranks[r] = Some(carry);
                    self.slots[carry].rank = r;
                }
                Some(h) => self.absorb(arena, h, carry),
            }
            None
        } else {
            let old = self.ranks[r].replace(carry).expect("over cap implies nonempty");
            self.slots[carry].rank = r;
            Some(old)
        }
    }

    /// Melds slot `newer` into slot `older` and joins their spans in `U`.
    fn absorb(&mut self, arena: &WeightArena, older: usize, newer: usize) {
        let taken = std::mem::take(&mut self.slots[newer].heap);
        let (s0, e0) = (self.slots[older].start, self.slots[older].end);
        let (s1, e1) = (self.slots[newer].start, self.slots[newer].end);
        debug_assert!(e0 <= s1);
        self.slots[older].heap.meld(&mut self.pool, arena, taken);
        self.spans.remove(s0, e0);
        self.spans.remove(s1, e1);
        self.spans.set(s0, e1, older).expect("joined span is free");
        self.slots[older].end = e1;
        self.free_slots.push(newer);
    }

    /// Re-establishes the lower bound on the top two ranks and trims empty top ranks.
    fn restore_top(&mut self, arena: &WeightArena, touched: usize) {
        let ord = EntryOrder(arena);
        let Some(top) = self.max_rank() else { return };
        if top >= 1 && touched + 1 >= top {
            let joint = self.size(top) + self.size(top - 1);
            if (joint as u128) < rank_cap(top - 1) {
                match (self.ranks[top], self.ranks[top - 1]) {
                    (Some(old), Some(new)) => {
                        self.absorb(arena, old, new);
                        self.ranks[top - 1] = Some(old);
                        self.slots[old].rank = top - 1;
                    }
                    (Some(old), None) => {
                        self.ranks[top - 1] = Some(old);
                        self.slots[old].rank = top - 1;
                    }
                    _ => {}
                }
                self.ranks[top] = None;
                let m = self.rank_min(top - 1);
                self.minima.decrease(top - 1, m, &ord).expect("merged minimum is no larger");
                self.minima.decrease(top, m, &ord).expect("merged minimum is no larger");
                self.minima.pop(&ord).expect("top two minima are equal");
                self.ranks.pop();
            }
        }
        while self.ranks.last() == Some(&None) {
            let top = self.ranks.len() - 1;
            if top == 0 {
                self.ranks.clear();
                self.minima.clear();
                break;
            }
            let below = self.minima.values()[top - 1];
            self.minima.decrease(top, below, &ord).expect("empty rank holds +inf");
            self.minima.pop(&ord).expect("top two minima are equal");
            self.ranks.pop();
        }
    }

    fn new_slot(&mut self, heap: FibHeap, start: u64, end: u64) -> usize {
        let slot = Slot { heap, start, end, rank: usize::MAX };
        let id = match self.free_slots.pop() {
            Some(id) => {
                self.slots[id] = slot;
                id
            }
            None => {
                self.slots.push(slot);
                self.slots.len() - 1
            }
        };
        self.spans.set(start, end, id).expect("fresh insertion time is unused");
        id
    }

    fn size(&self, r: usize) -> usize {
        self.ranks.get(r).copied().flatten().map_or(0, |id| self.slots[id].heap.len())
    }

    fn rank_min(&self, r: usize) -> Entry {
        self.ranks[r]
            .and_then(|id| self.slots[id].heap.find_min(&self.pool))
            .unwrap_or(Entry::EMPTY)
    }

    fn debug_check(&self, arena: &WeightArena) {
        if cfg!(debug_assertions) {
            if let Err(e) = self.check_structure(arena) {
                panic!("working-set heap invariant violated: {e}");
            }
        }
    }

    /// Checks the size invariants, rank order of spans, `U` and `M`. Cost is
    /// linear in the number of ranks, independent of the element count.
    pub fn check_structure(&self, arena: &WeightArena) -> Result<(), String> {
        let top = match self.max_rank() {
            None => {
                if self.len != 0 || !self.spans.is_empty() || !self.minima.is_empty() {
                    return Err("empty heap with leftover state".into());
                }
                return Ok(());
            }
            Some(t) => t,
        };
        if self.ranks[top].is_none() {
            return Err("top rank is empty".into());
        }
        let mut total = 0;
        for r in 0..=top {
            let size = self.size(r);
            total += size;
            if size as u128 > rank_cap(r) {
                return Err(format!("invariant 1: |H_{r}| = {size} exceeds cap"));
            }
            if let Some(id) = self.ranks[r] {
                let s = &self.slots[id];
                if s.rank != r || s.heap.is_empty() {
                    return Err(format!("slot for rank {r} mislabelled or empty"));
                }
                match self.spans.find(s.start) {
                    Some(iv) if iv.start == s.start && iv.end == s.end && iv.payload == id => {}
                    _ => return Err(format!("U lacks the span of rank {r}")),
                }
            }
        }
        if total != self.len {
            return Err(format!("sizes sum to {total}, len is {}", self.len));
        }
        if top >= 2 && ((self.size(top) + self.size(top - 1)) as u128) < rank_cap(top - 1) {
            return Err(format!("invariant 2 violated at R = {top}"));
        }
        let live: Vec<&Slot> = self.ranks.iter().flatten().map(|&id| &self.slots[id]).collect();
        if live.len() != self.spans.len() {
            return Err("U holds spans of no live heap".into());
        }
        for w in live.windows(2) {
            if w[1].end > w[0].start {
                return Err(format!("invariant 3: rank {} is not older than rank {}", w[1].rank, w[0].rank));
            }
        }
        if self.len >= 4 {
            let bound = 2 + ((self.len as f64).log2().log2().ceil() as usize);
            if top > bound {
                return Err(format!("max rank {top} exceeds {bound}"));
            }
        }
        if self.minima.len() != self.ranks.len() {
            return Err("M length differs from rank count".into());
        }
        for r in 0..=top {
            if self.minima.values()[r] != self.rank_min(r) {
                return Err(format!("M[{r}] is not the minimum of H_{r}"));
            }
        }
        self.minima.check(&EntryOrder(arena))
    }

    /// [`Self::check_structure`] plus per-element checks: heap order inside every
    /// rank and every element's insertion time inside its heap's span.
    pub fn check_full(&self, arena: &WeightArena) -> Result<(), String> {
        self.check_structure(arena)?;
        for &id in self.ranks.iter().flatten() {
            let s = &self.slots[id];
            s.heap.check(&self.pool, arena)?;
            for e in s.heap.entries(&self.pool) {
                if e.time < s.start || e.time >= s.end {
                    return Err(format!("element at time {} outside span of rank {}", e.time, s.rank));
                }
            }
        }
        Ok(())
    }
}

impl MinQueue for WorkSetHeap {
    type Handle = ElementHandle;

    fn insert(&mut self, arena: &WeightArena, key: Key, vertex: u32) -> ElementHandle {
        WorkSetHeap::insert(self, arena, key, vertex)
    }

    fn find_min(&self) -> Result<(Key, u32), HeapError> {
        WorkSetHeap::find_min(self)
    }

    fn extract_min(&mut self, arena: &WeightArena) -> Result<(Key, u32), HeapError> {
        WorkSetHeap::extract_min(self, arena).map(|x| (x.key, x.vertex))
    }

    fn decrease_key(&mut self, arena: &WeightArena, h: ElementHandle, key: Key) -> Result<(), HeapError> {
        WorkSetHeap::decrease_key(self, arena, h, key)
    }

    fn len(&self) -> usize {
        self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::testing::replay_against_oracle;

    fn fin(a: &WeightArena, v: u64) -> Key {
        Key::Finite(a.insert_integer(v))
    }

    #[test]
    fn caps() {
        assert_eq!(rank_cap(0), 2);
        assert_eq!(rank_cap(1), 4);
        assert_eq!(rank_cap(2), 16);
        assert_eq!(rank_cap(6), 1u128 << 64);
        assert_eq!(rank_cap(9), u128::MAX);
    }

    #[test]
    fn first_insert_fills_rank_zero() {
        let a = WeightArena::integral();
        let mut h = WorkSetHeap::new();
        h.insert(&a, fin(&a, 1), 0);
        assert_eq!(h.rank_sizes(), vec![1]);
    }

    #[test]
    fn full_rank_zero_swaps_with_carry() {
        let a = WeightArena::integral();
        let mut h = WorkSetHeap::new();
        let x = h.insert(&a, fin(&a, 1), 0);
        let y = h.insert(&a, fin(&a, 2), 1);
        assert_eq!(h.rank_sizes(), vec![2]);
        let z = h.insert(&a, fin(&a, 3), 2);
        // H_0 was at cap: the newcomer takes rank 0, the old pair moves up.
        assert_eq!(h.rank_sizes(), vec![1, 2]);
        assert_eq!(h.rank_of(z), Ok(0));
        assert_eq!(h.rank_of(x), Ok(1));
        assert_eq!(h.rank_of(y), Ok(1));
        h.check_full(&a).unwrap();
    }

    #[test]
    fn three_inserts_find_min() {
        let a = WeightArena::integral();
        let mut h = WorkSetHeap::new();
        for (i, v) in [5, 3, 8].into_iter().enumerate() {
            h.insert(&a, fin(&a, v), i as u32);
        }
        assert!(h.max_rank().unwrap() <= 1);
        assert_eq!(h.find_min().unwrap().1, 1);
        assert_eq!(h.extract_min(&a).unwrap().vertex, 1);
    }

    #[test]
    fn seven_inserts_reach_rank_two() {
        let a = WeightArena::integral();
        let mut h = WorkSetHeap::new();
        let mut times = Vec::new();
        for i in 0..7u32 {
            times.push(h.insert(&a, fin(&a, 100 - u64::from(i)), i).time());
            if i < 6 {
                assert!(h.max_rank().unwrap() < 2, "after {} inserts", i + 1);
            }
        }
        assert_eq!(h.max_rank(), Some(2));
        assert!(times.windows(2).all(|w| w[0] < w[1]));
        h.check_full(&a).unwrap();
    }

    #[test]
    fn decrease_examples() {
        let a = WeightArena::integral();
        let mut h = WorkSetHeap::new();
        let mut hs = Vec::new();
        for i in 0..40u32 {
            hs.push(h.insert(&a, fin(&a, 1000 + u64::from(i)), i));
        }
        // oldest element sits in the highest rank
        assert_eq!(h.rank_of(hs[0]), Ok(h.max_rank().unwrap()));
        h.decrease_key(&a, hs[0], fin(&a, 5)).unwrap();
        assert_eq!(h.find_min().unwrap().1, 0);
        h.decrease_key(&a, hs[0], fin(&a, 5)).unwrap();
        assert_eq!(h.find_min().unwrap().1, 0);
        assert_eq!(h.decrease_key(&a, hs[3], fin(&a, 5000)), Err(HeapError::KeyIncrease));
        assert_eq!(h.extract_min(&a).unwrap().vertex, 0);
        assert_eq!(h.decrease_key(&a, hs[0], fin(&a, 1)), Err(HeapError::StaleHandle));
        h.check_full(&a).unwrap();
    }

    #[test]
    fn empty_errors() {
        let a = WeightArena::integral();
        let mut h = WorkSetHeap::new();
        assert_eq!(h.find_min(), Err(HeapError::Empty));
        assert_eq!(h.extract_min(&a), Err(HeapError::Empty));
        h.insert(&a, fin(&a, 1), 0);
        h.extract_min(&a).unwrap();
        assert_eq!(h.extract_min(&a), Err(HeapError::Empty));
        h.check_full(&a).unwrap();
    }

    #[test]
    fn random_ops_match_oracle() {
        for seed in 0..4 {
            replay_against_oracle(WorkSetHeap::new(), 10_000, seed);
        }
    }

    #[test]
    fn drain_keeps_invariants() {
        use rand::{Rng, SeedableRng};
        let a = WeightArena::integral();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut h = WorkSetHeap::new();
        for i in 0..3000u32 {
            h.insert(&a, fin(&a, rng.gen_range(0..1_000_000)), i);
        }
        h.check_full(&a).unwrap();
        let mut last = None;
        while !h.is_empty() {
            let x = h.extract_min(&a).unwrap();
            let Key::Finite(w) = x.key else { unreachable!() };
            let v = a.audit().scaled(w);
            assert!(last.is_none_or(|l| l <= v));
            last = Some(v);
            if h.len() % 97 == 0 {
                h.check_full(&a).unwrap();
            }
        }
        h.check_full(&a).unwrap();
    }
}
