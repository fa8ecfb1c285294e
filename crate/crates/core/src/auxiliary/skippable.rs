use super::{AuxError, IntervalMap};

/// Run-length encoded array: maximal same-valued runs stored in an [`IntervalMap`].
#[derive(Clone, Debug)]
pub struct SkippableArray<V> {
    runs: IntervalMap<V>,
    len: usize,
}

impl<V: Copy + Eq> Default for SkippableArray<V> {
    fn default() -> Self {
        SkippableArray { runs: IntervalMap::new(), len: 0 }
    }
}

impl<V: Copy + Eq> SkippableArray<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_slice(values: &[V]) -> Self {
        let mut a = Self::new();
        a.replace_prefix(values);
        a
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of runs.
    pub fn runs(&self) -> usize {
        self.runs.len()
    }

    pub fn get(&self, i: usize) -> Result<V, AuxError> {
        self.run_at(i).map(|(_, _, v)| v)
    }

    pub fn to_vec(&self) -> Vec<V> {
        let mut out = Vec::with_capacity(self.len);
        for iv in self.runs.iter() {
            out.extend(std::iter::repeat_n(iv.payload, (iv.end - iv.start) as usize));
        }
        out
    }

    /// Largest `j < i` with `A[j] != A[i]`, or `None` if there is none.
    pub fn skip(&self, i: usize) -> Result<Option<usize>, AuxError> {
        let (start, _, _) = self.run_at(i)?;
        Ok(start.checked_sub(1))
    }

    /// Sets `A[j+1..=i] = x` for `j = skip(i)` and returns `j`.
    pub fn change_skip(&mut self, i: usize, x: V) -> Result<Option<usize>, AuxError> {
        let (start, end, v) = self.run_at(i)?;
        let j = start.checked_sub(1);
        if v == x {
            return Ok(j);
        }
        self.runs.remove(start as u64, end as u64);
        let mut lo = start;
        let mut hi = i + 1;
        if i + 1 < end {
            self.put(i + 1, end, v);
        } else if let Some((s2, e2, v2)) = self.run_starting(end) {
            if v2 == x {
                self.runs.remove(s2 as u64, e2 as u64);
                hi = e2;
            }
        }
        if let Some((s0, e0, v0)) = j.and_then(|j| self.run_at(j).ok()) {
            if v0 == x {
                self.runs.remove(s0 as u64, e0 as u64);
                lo = s0;
            }
        }
        self.put(lo, hi, x);
        Ok(j)
    }

    /// Overwrites `A[0..values.len())`, growing the array if needed.
    pub fn replace_prefix(&mut self, values: &[V]) {
        let p = values.len();
        if p == 0 {
            return;
        }
        let doomed: Vec<_> = self.runs.iter().take_while(|iv| (iv.start as usize) < p).collect();
        for iv in doomed {
            self.runs.remove(iv.start, iv.end);
            if iv.end as usize > p {
                self.put(p, iv.end as usize, iv.payload);
            }
        }
        self.len = self.len.max(p);
        let mut start = 0;
        for k in 1..=p {
            if k == p || values[k] != values[start] {
                let mut end = k;
                if k == p {
                    if let Some((s2, e2, v2)) = self.run_starting(p) {
                        if v2 == values[start] {
                            self.runs.remove(s2 as u64, e2 as u64);
                            end = e2;
                        }
                    }
                }
                self.put(start, end, values[start]);
                start = k;
            }
        }
    }

    pub fn push(&mut self, x: V) {
        let n = self.len;
        match self.runs.last() {
            Some(iv) if iv.payload == x => {
                self.runs.remove(iv.start, iv.end);
                self.put(iv.start as usize, n + 1, x);
            }
            _ => self.put(n, n + 1, x),
        }
        self.len += 1;
    }

    pub fn pop(&mut self) -> Option<V> {
        let iv = self.runs.last()?;
        self.runs.remove(iv.start, iv.end);
        if iv.end - iv.start > 1 {
            self.put(iv.start as usize, iv.end as usize - 1, iv.payload);
        }
        self.len -= 1;
        Some(iv.payload)
    }

    pub fn clear(&mut self) {
        self.runs = IntervalMap::new();
        self.len = 0;
    }

    /// Runs tile `[0, len)` and adjacent runs differ.
    pub fn check(&self) -> Result<(), String> {
        self.runs.check().map_err(|e| e.to_string())?;
        let mut expect = 0u64;
        let mut last: Option<V> = None;
        for iv in self.runs.iter() {
            if iv.start != expect {
                return Err(format!("gap or overlap at {}", iv.start));
            }
            if last == Some(iv.payload) {
                return Err(format!("uncoalesced runs at {}", iv.start));
            }
            last = Some(iv.payload);
            expect = iv.end;
        }
        if expect as usize != self.len {
            return Err("runs do not cover the array".into());
        }
        Ok(())
    }

    fn put(&mut self, start: usize, end: usize, v: V) {
        self.runs
            .set(start as u64, end as u64, v)
            .expect("skippable array runs are disjoint by construction");
    }

    fn run_at(&self, i: usize) -> Result<(usize, usize, V), AuxError> {
        if i >= self.len {
            return Err(AuxError::OutOfRange { index: i, len: self.len });
        }
        let iv = self.runs.find(i as u64).expect("runs cover the array");
        Ok((iv.start as usize, iv.end as usize, iv.payload))
    }

    fn run_starting(&self, i: usize) -> Option<(usize, usize, V)> {
        if i >= self.len {
            return None;
        }
        self.runs
            .find(i as u64)
            .filter(|iv| iv.start as usize == i)
            .map(|iv| (iv.start as usize, iv.end as usize, iv.payload))
    }
}
