use std::cmp::Ordering;

use super::{AuxError, SkippableArray};

/// Ordering used by a [`MinKeeper`].
pub trait Order<T> {
    /// The counted comparison.
    fn cmp(&self, a: &T, b: &T) -> Ordering;

    /// Comparison for contract checks; override to keep it off the books.
    fn audit(&self, a: &T, b: &T) -> Ordering {
        self.cmp(a, b)
    }
}

/// `Ord`-based ordering for plain values.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaturalOrder;

impl<T: Ord> Order<T> for NaturalOrder {
    fn cmp(&self, a: &T, b: &T) -> Ordering {
        a.cmp(b)
    }
}

/// Array `M` with suffix minima `S[i] = argmin M[i..]` (leftmost on ties).
///
/// `S` is stored as a [`SkippableArray`] of witness indices, so a decrease
/// rewrites whole runs of suffix minima at once.
#[derive(Clone, Debug)]
pub struct MinKeeper<T> {
    m: Vec<T>,
    s: SkippableArray<usize>,
}

impl<T> Default for MinKeeper<T> {
    fn default() -> Self {
        MinKeeper { m: Vec::new(), s: SkippableArray::new() }
    }
}

impl<T: Copy> MinKeeper<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.m
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.m.get(i)
    }

    /// Number of runs in the suffix-minimum array.
    pub fn runs(&self) -> usize {
        self.s.runs()
    }

    /// Leftmost index of a minimum of `M`.
    pub fn find_min(&self) -> Result<usize, AuxError> {
        if self.m.is_empty() {
            return Err(AuxError::Empty);
        }
        self.s.get(0)
    }

    /// Sets `M[i] = x` where `x <= M[i]`.
    pub fn decrease(&mut self, i: usize, x: T, ord: &impl Order<T>) -> Result<(), AuxError> {
        let len = self.m.len();
        if i >= len {
            return Err(AuxError::OutOfRange { index: i, len });
        }
        if ord.audit(&x, &self.m[i]) == Ordering::Greater {
            return Err(AuxError::Increase);
        }
        self.m[i] = x;
        let mut j = Some(i);
        while let Some(k) = j {
            let w = self.s.get(k)?;
            if w == i {
                j = self.s.skip(k)?;
                continue;
            }
            let wins = match ord.cmp(&x, &self.m[w]) {
                Ordering::Less => true,
                Ordering::Equal => i < w,
                Ordering::Greater => false,
            };
            if !wins {
                break;
            }
            j = self.s.change_skip(k, i)?;
        }
        Ok(())
    }

    /// Sets `M[0..p.len()] = p`, growing `M` if needed, and recomputes those suffix minima.
    pub fn change_prefix(&mut self, p: &[T], ord: &impl Order<T>) {
        let n = p.len();
        if n == 0 {
            return;
        }
        if n > self.m.len() {
            self.m.resize(n, p[0]);
        }
        self.m[..n].copy_from_slice(p);
        let mut cur = if n < self.m.len() { Some(self.s.get(n).expect("in range")) } else { None };
        let mut wit = vec![0usize; n];
        for k in (0..n).rev() {
            cur = match cur {
                None => Some(k),
                Some(c) if ord.cmp(&self.m[k], &self.m[c]) != Ordering::Greater => Some(k),
                keep => keep,
            };
            wit[k] = cur.unwrap();
        }
        self.s.replace_prefix(&wit);
    }

    /// Drops the last element, whose value must equal the one before it.
    pub fn pop(&mut self, ord: &impl Order<T>) -> Result<(), AuxError> {
        let n = self.m.len();
        if n < 2 || ord.audit(&self.m[n - 1], &self.m[n - 2]) != Ordering::Equal {
            return Err(AuxError::PopPrecondition);
        }
        self.m.pop();
        self.s.pop();
        Ok(())
    }

    pub fn clear(&mut self) {
        self.m.clear();
        self.s.clear();
    }

    /// Recomputes every suffix minimum from scratch and compares.
    pub fn check(&self, ord: &impl Order<T>) -> Result<(), String> {
        self.s.check()?;
        if self.s.len() != self.m.len() {
            return Err("S and M lengths differ".into());
        }
        let mut best: Option<usize> = None;
        for k in (0..self.m.len()).rev() {
            best = match best {
                Some(b) if ord.audit(&self.m[k], &self.m[b]) == Ordering::Greater => Some(b),
                _ => Some(k),
            };
            let got = self.s.get(k).map_err(|e| e.to_string())?;
            if Some(got) != best {
                return Err(format!("S[{k}] = {got}, expected {}", best.unwrap()));
            }
        }
        Ok(())
    }
}
