use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::graph::SpanningTree;
use crate::weights::{WeightArena, WeightHandle};

fn cmp_dist(arena: &WeightArena, d: &[WeightHandle], x: usize, y: usize) -> Ordering {
    if d[x] == d[y] {
        Ordering::Equal
    } else {
        arena.compare(d[x], d[y])
    }
}

/// Hwang-Lin binary merge working from the tails. On equal distances
/// elements of `a` come first. Both inputs must be sorted by `d`.
pub fn hwang_lin_merge(a: &[usize], b: &[usize], d: &[WeightHandle], arena: &WeightArena) -> Vec<usize> {
    merge_deques(a.iter().copied().collect(), b.iter().copied().collect(), d, arena).into()
}

pub(crate) fn merge_deques(
    mut a: VecDeque<usize>,
    mut b: VecDeque<usize>,
    d: &[WeightHandle],
    arena: &WeightArena,
) -> VecDeque<usize> {
    // merged suffix, built back to front
    let mut tail = Vec::new();
    while !a.is_empty() && !b.is_empty() {
        let small_is_a = a.len() <= b.len();
        let (small, large) = if small_is_a { (&mut a, &mut b) } else { (&mut b, &mut a) };
        let (m, n) = (small.len(), large.len());
        let step = 1usize << (n / m).ilog2();
        let x = *small.back().unwrap();
        // `y` lands after `x` in the output
        let after = |y: usize| match cmp_dist(arena, d, x, y) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => small_is_a,
        };
        if after(large[n - step]) {
            for _ in 0..step {
                tail.push(large.pop_back().unwrap());
            }
        } else {
            let (mut lo, mut hi) = (n - step + 1, n);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if after(large[mid]) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            for _ in lo..n {
                tail.push(large.pop_back().unwrap());
            }
            tail.push(small.pop_back().unwrap());
        }
    }
    let mut rest = if a.is_empty() { b } else { a };
    rest.extend(tail.into_iter().rev());
    rest
}

/// Linearizes a rooted tree by distance: each vertex followed by the
/// Hwang-Lin merge of its children's linearizations, children taken in
/// increasing id order.
pub fn tree_dp_linearize(t: &SpanningTree, d: &[WeightHandle], arena: &WeightArena) -> Vec<usize> {
    let children = t.children();
    let mut lists: Vec<Option<VecDeque<usize>>> = vec![None; t.n()];
    for v in t.preorder().into_iter().rev() {
        let mut merged = VecDeque::new();
        for &c in &children[v] {
            let sub = lists[c].take().expect("children finish first");
            merged = if merged.is_empty() { sub } else { merge_deques(merged, sub, d, arena) };
        }
        merged.push_front(v);
        lists[v] = Some(merged);
    }
    lists[t.root()].take().map(Vec::from).unwrap_or_default()
}

/// `log2 C(n, k)`.
pub fn log2_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).log2() - ((i + 1) as f64).log2()).sum()
}
