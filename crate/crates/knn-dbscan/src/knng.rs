//! Exact directed k-nearest-neighbor graphs built by brute force, plus
//! neighbor-distance statistics.
//!
//! Every neighbor list is self-inclusive: position 0 holds `(i, 0.0)`
//! even when other points coincide with `i`. Remaining entries are the
//! nearest other points sorted ascending by `(distance, index)`; the
//! index rule makes ties deterministic.

use crate::error::{Error, Result};
use crate::parallel::Workers;
use crate::points::PointSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborEntry {
    pub target: usize,
    pub weight: f64,
}

/// Directed kNN graph: for each point, exactly `k_max` entries sorted
/// ascending by `(weight, target)`, with the point itself first.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborGraph {
    n: usize,
    k_max: usize,
    entries: Vec<NeighborEntry>,
}

impl NeighborGraph {
    /// Wraps raw per-point neighbor lists, validating the graph
    /// invariants. Lists need not come from an exact search; any graph
    /// honoring the ordering contract is accepted.
    pub fn from_entries(n: usize, k_max: usize, entries: Vec<NeighborEntry>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_argument("graph needs at least one point"));
        }
        if k_max < 1 || k_max > n {
            return Err(Error::invalid_argument(format!(
                "k_max {k_max} out of range 1..={n}"
            )));
        }
        if entries.len() != n * k_max {
            return Err(Error::invalid_data(format!(
                "expected {} entries, got {}",
                n * k_max,
                entries.len()
            )));
        }
        let graph = NeighborGraph { n, k_max, entries };
        for i in 0..n {
            let row = graph.neighbors(i);
            if row[0].target != i || row[0].weight != 0.0 {
                return Err(Error::invalid_data(format!(
                    "point {i}: first entry must be the point itself at weight 0"
                )));
            }
            for m in 1..k_max {
                let (prev, cur) = (row[m - 1], row[m]);
                if !cur.weight.is_finite() || cur.weight < 0.0 {
                    return Err(Error::invalid_data(format!(
                        "point {i}: entry {m} has invalid weight {}",
                        cur.weight
                    )));
                }
                if cur.target >= n {
                    return Err(Error::invalid_data(format!(
                        "point {i}: entry {m} targets out-of-range point {}",
                        cur.target
                    )));
                }
                // Position 0 is exempt from the tie rule by the
                // self-first convention.
                if m >= 2 && (cur.weight, cur.target) < (prev.weight, prev.target) {
                    return Err(Error::invalid_data(format!(
                        "point {i}: entries not ascending at position {m}"
                    )));
                }
            }
        }
        Ok(graph)
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn neighbors(&self, i: usize) -> &[NeighborEntry] {
        &self.entries[i * self.k_max..(i + 1) * self.k_max]
    }

    pub fn entry(&self, i: usize, position: usize) -> NeighborEntry {
        self.entries[i * self.k_max + position]
    }
}

/// Builds the exact kNN graph by brute force: each point's list is the
/// full pairwise scan reduced to the `k_max - 1` nearest others under
/// the `(distance, index)` order, with the point itself prepended.
pub fn build_exact_knng(
    points: &PointSet,
    k_max: usize,
    workers: &Workers,
) -> Result<NeighborGraph> {
    let n = points.n_points();
    if k_max < 1 || k_max > n {
        return Err(Error::invalid_argument(format!(
            "k_max {k_max} out of range 1..={n}"
        )));
    }
    let rows = workers.run_chunks(n, |range| {
        let mut out = Vec::with_capacity(range.len() * k_max);
        let mut scratch: Vec<NeighborEntry> = Vec::with_capacity(n - 1);
        for i in range {
            out.push(NeighborEntry {
                target: i,
                weight: 0.0,
            });
            scratch.clear();
            for j in 0..n {
                if j != i {
                    scratch.push(NeighborEntry {
                        target: j,
                        weight: points.distance(i, j),
                    });
                }
            }
            let keep = k_max - 1;
            let by_weight_then_index = |a: &NeighborEntry, b: &NeighborEntry| {
                a.weight
                    .total_cmp(&b.weight)
                    .then(a.target.cmp(&b.target))
            };
            if keep > 0 && keep < scratch.len() {
                scratch.select_nth_unstable_by(keep - 1, by_weight_then_index);
            }
            scratch.truncate(keep);
            scratch.sort_unstable_by(by_weight_then_index);
            out.extend_from_slice(&scratch);
        }
        out
    });
    let entries = rows.into_iter().flatten().collect();
    NeighborGraph::from_entries(n, k_max, entries)
}

/// Median and mean distance to the k-th entry of the self-inclusive
/// list (k = 2 is the first non-self neighbor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborStats {
    pub k: usize,
    pub median_dist: f64,
    pub mean_dist: f64,
}

pub fn neighbor_stats(graph: &NeighborGraph, k: usize) -> Result<NeighborStats> {
    if k < 1 || k > graph.k_max() {
        return Err(Error::invalid_argument(format!(
            "k {k} out of range 1..={}",
            graph.k_max()
        )));
    }
    let n = graph.n_points();
    let mut dists: Vec<f64> = (0..n).map(|i| graph.entry(i, k - 1).weight).collect();
    let mean = dists.iter().sum::<f64>() / n as f64;
    dists.sort_unstable_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        dists[n / 2]
    } else {
        0.5 * (dists[n / 2 - 1] + dists[n / 2])
    };
    Ok(NeighborStats {
        k,
        median_dist: median,
        mean_dist: mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::SplitMix64;

    fn square_points() -> PointSet {
        PointSet::new(vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0], 2).unwrap()
    }

    #[test]
    fn unit_square_ties_break_by_index() {
        let graph = build_exact_knng(&square_points(), 3, &Workers::new(1)).unwrap();
        let row: Vec<(usize, f64)> = graph.neighbors(0).iter().map(|e| (e.target, e.weight)).collect();
        assert_eq!(row, vec![(0, 0.0), (1, 1.0), (2, 1.0)]);
    }

    #[test]
    fn k_one_is_just_self() {
        let graph = build_exact_knng(&square_points(), 1, &Workers::new(1)).unwrap();
        for i in 0..4 {
            assert_eq!(graph.neighbors(i), &[NeighborEntry { target: i, weight: 0.0 }]);
        }
    }

    #[test]
    fn k_max_beyond_n_is_invalid() {
        let err = build_exact_knng(&square_points(), 5, &Workers::new(1)).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    /// Independent oracle: full pairwise sort per point, no selection.
    fn full_sort_oracle(points: &PointSet, k_max: usize) -> Vec<Vec<NeighborEntry>> {
        let n = points.n_points();
        (0..n)
            .map(|i| {
                let mut all: Vec<NeighborEntry> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| NeighborEntry {
                        target: j,
                        weight: points.distance(i, j),
                    })
                    .collect();
                all.sort_by(|a, b| a.weight.total_cmp(&b.weight).then(a.target.cmp(&b.target)));
                let mut row = vec![NeighborEntry { target: i, weight: 0.0 }];
                row.extend(all.into_iter().take(k_max - 1));
                row
            })
            .collect()
    }

    fn random_points(n: usize, d: usize, seed: u64) -> PointSet {
        let mut rng = SplitMix64::new(seed);
        let coords: Vec<f64> = (0..n * d).map(|_| rng.next_f64()).collect();
        PointSet::new(coords, d).unwrap()
    }

    #[test]
    fn matches_full_sort_oracle() {
        let points = random_points(50, 2, 99);
        let graph = build_exact_knng(&points, 5, &Workers::new(2)).unwrap();
        let oracle = full_sort_oracle(&points, 5);
        for i in 0..50 {
            assert_eq!(graph.neighbors(i), &oracle[i][..], "row {i}");
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let points = random_points(60, 3, 17);
        let one = build_exact_knng(&points, 8, &Workers::new(1)).unwrap();
        let many = build_exact_knng(&points, 8, &Workers::new(7)).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn duplicate_points_keep_self_first() {
        let points = PointSet::new(vec![0.5, 0.5, 0.5, 2.0], 1).unwrap();
        let graph = build_exact_knng(&points, 3, &Workers::new(1)).unwrap();
        // Point 2 coincides with points 0 and 1 but still lists itself first.
        assert_eq!(graph.entry(2, 0).target, 2);
        assert_eq!(graph.entry(2, 1).target, 0);
        assert_eq!(graph.entry(2, 1).weight, 0.0);
    }

    #[test]
    fn weights_match_recomputed_distances() {
        let points = random_points(40, 4, 5);
        let graph = build_exact_knng(&points, 10, &Workers::new(2)).unwrap();
        for i in 0..40 {
            for e in graph.neighbors(i) {
                let d = points.distance(i, e.target);
                let scale = d.abs().max(1.0);
                assert!((e.weight - d).abs() / scale < 1e-12);
            }
        }
    }

    #[test]
    fn collinear_stats_by_hand() {
        // Points at x = 0, 1, 3: non-self nearest distances are 1, 1, 2.
        let points = PointSet::new(vec![0.0, 1.0, 3.0], 1).unwrap();
        let graph = build_exact_knng(&points, 3, &Workers::new(1)).unwrap();
        let stats = neighbor_stats(&graph, 2).unwrap();
        assert_eq!(stats.median_dist, 1.0);
        assert!((stats.mean_dist - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn stats_k1_is_zero() {
        let graph = build_exact_knng(&square_points(), 3, &Workers::new(1)).unwrap();
        let stats = neighbor_stats(&graph, 1).unwrap();
        assert_eq!(stats.median_dist, 0.0);
        assert_eq!(stats.mean_dist, 0.0);
        assert!(neighbor_stats(&graph, 4).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn coords(n: usize, d: usize) -> impl Strategy<Value = Vec<f64>> {
            proptest::collection::vec(-100.0f64..100.0, n * d)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn shorter_lists_are_prefixes_of_longer_ones(
                raw in (4usize..40, 1usize..4).prop_flat_map(|(n, d)| {
                    coords(n, d).prop_map(move |c| (c, d))
                })
            ) {
                let (c, d) = raw;
                let points = PointSet::new(c, d).unwrap();
                let n = points.n_points();
                let small = 1 + n % 3;
                let large = (small + 2).min(n);
                let w = Workers::new(1);
                let a = build_exact_knng(&points, small, &w).unwrap();
                let b = build_exact_knng(&points, large, &w).unwrap();
                for i in 0..n {
                    prop_assert_eq!(a.neighbors(i), &b.neighbors(i)[..small]);
                }
            }

            #[test]
            fn permuting_points_permutes_the_graph(
                (c, d, seed) in (4usize..30, 1usize..4)
                    .prop_flat_map(|(n, d)| (coords(n, d), Just(d), any::<u64>()))
            ) {
                let points = PointSet::new(c, d).unwrap();
                let n = points.n_points();
                // Random coordinates make distance ties negligible, so
                // the permuted build matches the relabeled original.
                let mut perm: Vec<usize> = (0..n).collect();
                let mut rng = SplitMix64::new(seed);
                for i in (1..n).rev() {
                    perm.swap(i, rng.next_usize_below(i + 1));
                }
                let mut inverse = vec![0usize; n];
                for (new_idx, &old_idx) in perm.iter().enumerate() {
                    inverse[old_idx] = new_idx;
                }
                let k = 3.min(n);
                let w = Workers::new(1);
                let original = build_exact_knng(&points, k, &w).unwrap();
                let shuffled = build_exact_knng(&points.permuted(&perm).unwrap(), k, &w).unwrap();
                for new_idx in 0..n {
                    let old_idx = perm[new_idx];
                    for m in 0..k {
                        let got = shuffled.entry(new_idx, m);
                        let want = original.entry(old_idx, m);
                        prop_assert_eq!(got.target, inverse[want.target]);
                        prop_assert_eq!(got.weight, want.weight);
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_stats_close_to_pairwise_oracle() {
        let (points, _) = crate::datasets::gen_sphere(1000, 10, 1.0, 31).unwrap();
        let graph = build_exact_knng(&points, 4, &Workers::new(2)).unwrap();
        let stats = neighbor_stats(&graph, 2).unwrap();
        // Direct pairwise oracle for the first non-self neighbor distance.
        let mut mins: Vec<f64> = (0..1000)
            .map(|i| {
                (0..1000)
                    .filter(|&j| j != i)
                    .map(|j| points.distance(i, j))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        mins.sort_unstable_by(f64::total_cmp);
        let oracle_median = 0.5 * (mins[499] + mins[500]);
        assert!((stats.median_dist - oracle_median).abs() / oracle_median < 0.2);
    }
}
