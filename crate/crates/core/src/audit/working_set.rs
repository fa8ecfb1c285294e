use super::segtree::AddMaxTree;
use crate::dijkstra::IntervalSet;

/// Index of each endpoint in the sorted list of distinct endpoints.
pub(crate) fn compress(iv: &IntervalSet) -> (Vec<u64>, Vec<usize>, Vec<usize>) {
    let mut coords: Vec<u64> = iv.start.iter().chain(&iv.end).copied().collect();
    coords.sort_unstable();
    coords.dedup();
    let at = |t: u64| coords.binary_search(&t).unwrap();
    let lo = iv.start.iter().map(|&t| at(t)).collect();
    let hi = iv.end.iter().map(|&t| at(t)).collect();
    (coords, lo, hi)
}

/// `|W_x| = max_{t ∈ [l_x, r_x]} |{y : l_x <= l_y <= t <= r_y}|` for every interval.
///
/// Sweeps starts from right to left, adding each interval to a counter over
/// time and querying the maximum over `x`'s own span: O(n log n).
pub fn working_sets(iv: &IntervalSet) -> Vec<u64> {
    let n = iv.len();
    if n == 0 {
        return Vec::new();
    }
    let (coords, lo, hi) = compress(iv);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&x| std::cmp::Reverse(lo[x]));
    let mut tree = AddMaxTree::new(coords.len());
    let mut out = vec![0u64; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && lo[order[j]] == lo[order[i]] {
            tree.add(lo[order[j]], hi[order[j]], 1);
            j += 1;
        }
        for &x in &order[i..j] {
            out[x] = tree.max(lo[x], hi[x]) as u64;
        }
        i = j;
    }
    out
}

/// `Σ_x log2 |W_x|`.
pub fn cost(iv: &IntervalSet) -> f64 {
    working_sets(iv).iter().map(|&w| (w as f64).log2()).sum()
}

/// Largest number of intervals sharing a time.
pub fn max_overlap(iv: &IntervalSet) -> u64 {
    if iv.is_empty() {
        return 0;
    }
    let (coords, lo, hi) = compress(iv);
    let mut tree = AddMaxTree::new(coords.len());
    for x in 0..iv.len() {
        tree.add(lo[x], hi[x], 1);
    }
    tree.argmax().1 as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The definition verbatim, with `t` ranging over every endpoint.
    fn brute(iv: &IntervalSet) -> Vec<u64> {
        let times: Vec<u64> = iv.start.iter().chain(&iv.end).copied().collect();
        (0..iv.len())
            .map(|x| {
                times
                    .iter()
                    .filter(|&&t| iv.start[x] <= t && t <= iv.end[x])
                    .map(|&t| {
                        (0..iv.len())
                            .filter(|&y| iv.start[x] <= iv.start[y] && iv.start[y] <= t && t <= iv.end[y])
                            .count() as u64
                    })
                    .max()
                    .unwrap()
            })
            .collect()
    }

    fn set(pairs: &[(u64, u64)]) -> IntervalSet {
        IntervalSet { start: pairs.iter().map(|p| p.0).collect(), end: pairs.iter().map(|p| p.1).collect() }
    }

    /// Intervals from a random sequence of pushes and pops on a multiset.
    fn random_trace() -> impl Strategy<Value = IntervalSet> {
        (1usize..40, any::<u64>()).prop_map(|(n, seed)| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut live = Vec::new();
            let (mut start, mut end) = (vec![0; n], vec![0; n]);
            let (mut clock, mut next) = (0u64, 0usize);
            while next < n || !live.is_empty() {
                if next < n && (live.is_empty() || rng.gen_bool(0.5)) {
                    start[next] = clock;
                    live.push(next);
                    next += 1;
                } else {
                    let x = live.swap_remove(rng.gen_range(0..live.len()));
                    end[x] = clock;
                }
                clock += 1;
            }
            IntervalSet { start, end }
        })
    }

    #[test]
    fn single_interval() {
        assert_eq!(working_sets(&set(&[(0, 1)])), vec![1]);
    }

    #[test]
    fn nested_lifo() {
        // k nested intervals, innermost extracted first
        let k = 6u64;
        let pairs: Vec<(u64, u64)> = (0..k).map(|i| (i, 2 * k - 1 - i)).collect();
        let w = working_sets(&set(&pairs));
        assert_eq!(w, vec![6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn disjoint_intervals_cost_nothing() {
        let pairs: Vec<(u64, u64)> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
        assert_eq!(cost(&set(&pairs)), 0.0);
    }

    #[test]
    fn fifo_overlap_costs_log_factorial() {
        // all inserted, then extracted oldest first
        let n = 9u64;
        let pairs: Vec<(u64, u64)> = (0..n).map(|i| (i, n + i)).collect();
        let w = working_sets(&set(&pairs));
        assert_eq!(w, (1..=n).rev().collect::<Vec<_>>());
        let want: f64 = (1..=n).map(|i| (i as f64).log2()).sum();
        assert!((cost(&set(&pairs)) - want).abs() < 1e-9);
    }

    #[test]
    fn shared_starts_count_each_other() {
        let w = working_sets(&set(&[(0, 5), (0, 3)]));
        assert_eq!(w, vec![2, 2]);
    }

    proptest! {
        #[test]
        fn matches_definition(iv in random_trace()) {
            prop_assert_eq!(working_sets(&iv), brute(&iv));
        }

        #[test]
        fn deleting_an_interval_loses_little(iv in random_trace(), pick in any::<prop::sample::Index>()) {
            let x = pick.index(iv.len());
            let w = working_sets(&iv)[x] as f64;
            let k = max_overlap(&iv) as f64;
            let mut rest = iv.clone();
            rest.start.remove(x);
            rest.end.remove(x);
            prop_assert!(cost(&iv) <= cost(&rest) + w.log2() + k.log2() + 1e-9);
        }
    }
}
