use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Unbounded};

use super::AuxError;

/// A stored right-open interval `[start, end)` with its payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval<P> {
    pub start: u64,
    pub end: u64,
    pub payload: P,
}

/// Result of [`IntervalMap::locate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Located<P> {
    /// Interval containing the query point.
    pub find: Option<Interval<P>>,
    /// Rightmost interval ending at or before the point.
    pub prev: Option<Interval<P>>,
    /// Leftmost interval starting after the point.
    pub next: Option<Interval<P>>,
}

/// Pairwise disjoint right-open intervals keyed by start, backed by a B-tree.
#[derive(Clone, Debug)]
pub struct IntervalMap<P> {
    map: BTreeMap<u64, (u64, P)>,
}

impl<P> Default for IntervalMap<P> {
    fn default() -> Self {
        IntervalMap { map: BTreeMap::new() }
    }
}

impl<P: Copy> IntervalMap<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn set(&mut self, start: u64, end: u64, payload: P) -> Result<(), AuxError> {
        if start >= end {
            return Err(AuxError::EmptyInterval { start, end });
        }
        if let Some((_, &(e, _))) = self.map.range(..end).next_back() {
            if e > start {
                return Err(AuxError::Overlap { start, end });
            }
        }
        self.map.insert(start, (end, payload));
        debug_assert!(self.check().is_ok());
        Ok(())
    }

    /// Removes `[start, end)` if exactly that interval is stored.
    pub fn remove(&mut self, start: u64, end: u64) -> Option<P> {
        match self.map.get(&start) {
            Some(&(e, p)) if e == end => {
                self.map.remove(&start);
                Some(p)
            }
            _ => None,
        }
    }

    pub fn find(&self, t: u64) -> Option<Interval<P>> {
        self.map
            .range(..=t)
            .next_back()
            .filter(|(_, &(e, _))| e > t)
            .map(|(&s, &(e, p))| Interval { start: s, end: e, payload: p })
    }

    pub fn locate(&self, t: u64) -> Located<P> {
        let mk = |(&s, &(e, p)): (&u64, &(u64, P))| Interval { start: s, end: e, payload: p };
        let below = self.map.range(..=t).next_back().map(mk);
        let (find, prev) = match below {
            Some(iv) if iv.end > t => (Some(iv), self.map.range(..iv.start).next_back().map(mk)),
            other => (None, other),
        };
        let next = self.map.range((Excluded(t), Unbounded)).next().map(mk);
        Located { find, prev, next }
    }

    pub fn first(&self) -> Option<Interval<P>> {
        self.map.iter().next().map(|(&s, &(e, p))| Interval { start: s, end: e, payload: p })
    }

    pub fn last(&self) -> Option<Interval<P>> {
        self.map.iter().next_back().map(|(&s, &(e, p))| Interval { start: s, end: e, payload: p })
    }

    pub fn iter(&self) -> impl Iterator<Item = Interval<P>> + '_ {
        self.map.iter().map(|(&s, &(e, p))| Interval { start: s, end: e, payload: p })
    }

    /// Full scan for disjointness and nonempty intervals.
    pub fn check(&self) -> Result<(), AuxError> {
        let mut last_end = None;
        for (&s, &(e, _)) in &self.map {
            if s >= e {
                return Err(AuxError::EmptyInterval { start: s, end: e });
            }
            if last_end.is_some_and(|le| le > s) {
                return Err(AuxError::Overlap { start: s, end: e });
            }
            last_end = Some(e);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(start: u64, end: u64, payload: u32) -> Interval<u32> {
        Interval { start, end, payload }
    }

    #[test]
    fn set_and_find() {
        let mut m = IntervalMap::new();
        m.set(0, 5, 1u32).unwrap();
        assert_eq!(m.find(3), Some(iv(0, 5, 1)));
    }

    #[test]
    fn touching_intervals_allowed() {
        let mut m = IntervalMap::new();
        m.set(0, 5, 1u32).unwrap();
        m.set(5, 9, 2).unwrap();
        assert_eq!(m.find(4), Some(iv(0, 5, 1)));
        assert_eq!(m.find(5), Some(iv(5, 9, 2)));
    }

    #[test]
    fn overlap_rejected() {
        let mut m = IntervalMap::new();
        m.set(0, 5, 1u32).unwrap();
        assert_eq!(m.set(3, 7, 2), Err(AuxError::Overlap { start: 3, end: 7 }));
        assert!(matches!(m.set(4, 4, 2), Err(AuxError::EmptyInterval { .. })));
        // containing interval on the left of an existing one
        m.set(10, 12, 3).unwrap();
        assert!(m.set(6, 20, 4).is_err());
    }

    #[test]
    fn remove_cases() {
        let mut m = IntervalMap::new();
        m.set(0, 5, 1u32).unwrap();
        assert_eq!(m.remove(0, 5), Some(1));
        assert_eq!(m.find(0), None);
        assert_eq!(m.remove(0, 5), None);
        m.set(0, 5, 1).unwrap();
        m.remove(0, 5);
        m.set(0, 5, 7).unwrap();
        assert_eq!(m.find(2).unwrap().payload, 7);
    }

    #[test]
    fn locate_cases() {
        let mut m = IntervalMap::new();
        m.set(0, 5, 1u32).unwrap();
        m.set(8, 9, 2).unwrap();
        let l = m.locate(6);
        assert_eq!(l.find, None);
        assert_eq!(l.prev, Some(iv(0, 5, 1)));
        assert_eq!(l.next, Some(iv(8, 9, 2)));
        assert_eq!(m.locate(0).find, Some(iv(0, 5, 1)));
        assert_eq!(m.locate(5).find, None);
        let l = m.locate(8);
        assert_eq!(l.find, Some(iv(8, 9, 2)));
        assert_eq!(l.prev, Some(iv(0, 5, 1)));
        assert_eq!(l.next, None);
    }
}
