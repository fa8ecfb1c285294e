//! Two small segment trees used by the interval sweeps.

/// Range add, range max, leftmost argmax.
pub(crate) struct AddMaxTree {
    n: usize,
    max: Vec<i64>,
    lazy: Vec<i64>,
}

impl AddMaxTree {
    pub fn new(n: usize) -> Self {
        let size = 4 * n.max(1);
        AddMaxTree { n: n.max(1), max: vec![0; size], lazy: vec![0; size] }
    }

    /// Adds `v` to positions `l..=r`.
    pub fn add(&mut self, l: usize, r: usize, v: i64) {
        self.add_rec(1, 0, self.n - 1, l, r, v);
    }

    /// Maximum over `l..=r`.
    pub fn max(&self, l: usize, r: usize) -> i64 {
        self.max_rec(1, 0, self.n - 1, l, r)
    }

    /// Leftmost position holding the global maximum, and that maximum.
    pub fn argmax(&self) -> (usize, i64) {
        let (mut node, mut lo, mut hi) = (1, 0, self.n - 1);
        let target = self.max[1];
        let mut pending = 0;
        while lo < hi {
            pending += self.lazy[node];
            let mid = (lo + hi) / 2;
            if self.max[2 * node] + pending == target {
                node *= 2;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
        (lo, target)
    }

    fn add_rec(&mut self, node: usize, lo: usize, hi: usize, l: usize, r: usize, v: i64) {
        if r < lo || hi < l {
            return;
        }
        if l <= lo && hi <= r {
            self.max[node] += v;
            self.lazy[node] += v;
            return;
        }
        let mid = (lo + hi) / 2;
        self.add_rec(2 * node, lo, mid, l, r, v);
        self.add_rec(2 * node + 1, mid + 1, hi, l, r, v);
        self.max[node] = self.lazy[node] + self.max[2 * node].max(self.max[2 * node + 1]);
    }

    fn max_rec(&self, node: usize, lo: usize, hi: usize, l: usize, r: usize) -> i64 {
        if r < lo || hi < l {
            return i64::MIN;
        }
        if l <= lo && hi <= r {
            return self.max[node];
        }
        let mid = (lo + hi) / 2;
        let best = self.max_rec(2 * node, lo, mid, l, r).max(self.max_rec(2 * node + 1, mid + 1, hi, l, r));
        best.saturating_add(self.lazy[node])
    }
}

/// Point assignment, and "first index in a prefix with value at least t".
pub(crate) struct PrefixSearchTree {
    n: usize,
    max: Vec<i64>,
}

impl PrefixSearchTree {
    pub fn new(values: &[i64]) -> Self {
        let n = values.len().max(1);
        let mut size = 1;
        while size < n {
            size *= 2;
        }
        let mut max = vec![i64::MIN; 2 * size];
        max[size..size + values.len()].copy_from_slice(values);
        for i in (1..size).rev() {
            max[i] = max[2 * i].max(max[2 * i + 1]);
        }
        PrefixSearchTree { n: size, max }
    }

    pub fn set(&mut self, i: usize, v: i64) {
        let mut i = i + self.n;
        self.max[i] = v;
        while i > 1 {
            i /= 2;
            self.max[i] = self.max[2 * i].max(self.max[2 * i + 1]);
        }
    }

    /// First index `i < end` with `value[i] >= t`.
    pub fn find_first(&self, end: usize, t: i64) -> Option<usize> {
        self.find_rec(1, 0, self.n, end, t)
    }

    fn find_rec(&self, node: usize, lo: usize, hi: usize, end: usize, t: i64) -> Option<usize> {
        if lo >= end || self.max[node] < t {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.find_rec(2 * node, lo, mid, end, t).or_else(|| self.find_rec(2 * node + 1, mid, hi, end, t))
    }
}
