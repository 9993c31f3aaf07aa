//! Deterministic k-means over the rows of a distance matrix.
//!
//! Each row of a [`DistanceMatrix`] is a point in ℝⁿ — entity *i* is
//! described by its distances to everyone, the zero self-distance
//! coordinate included. [`kmeans`] clusters those points with Lloyd's
//! iteration under squared Euclidean distance, seeded by the k-means++
//! rule.
//!
//! Everything is deterministic given `(matrix, k, seed, max_iter)`:
//! randomness comes only from [`SplitMix64`] (a pinned, published
//! generator), every tie breaks toward the lowest index, and every floating
//! sum runs in a fixed order. Two runs with the same inputs produce
//! bit-identical models, on any machine, at any thread count.

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;
use crate::rng::SplitMix64;

/// Default cluster count for the bundled survey table: its distance
/// structure separates into five groups.
pub const DEFAULT_K: usize = 5;

/// Default cap on Lloyd's iterations; on small inputs convergence typically
/// arrives within a handful.
pub const DEFAULT_MAX_ITER: usize = 300;

/// The result of one k-means run.
///
/// `assignments[i]` is the cluster index of point *i* (in `0..k`);
/// `centroids[c]` is cluster *c*'s mean row; `point_distances[i]` is the
/// Euclidean distance from point *i* to its centroid. `objective_history`
/// records the sum of squared point-to-centroid distances at the end of
/// each completed iteration — non-increasing, by the algebra of Lloyd's
/// both half-steps — and `objective` is its final entry. `iterations`
/// counts completed assign-update cycles (a final assignment pass that
/// changes nothing confirms convergence and is not counted).
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClusterModel {
    pub k: usize,
    pub seed: u64,
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub point_distances: Vec<f64>,
    pub iterations: usize,
    pub objective: f64,
    pub objective_history: Vec<f64>,
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

/// Index and squared distance of the nearest centroid; ties go to the
/// lowest index (strict `<` never replaces an equal incumbent).
fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, squared_distance(point, &centroids[0]));
    for (c, centroid) in centroids.iter().enumerate().skip(1) {
        let d = squared_distance(point, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// k-means++ seeding: the first centroid is a uniformly random point; each
/// further centroid is drawn with probability proportional to the squared
/// distance to the nearest centroid chosen so far (the D² rule).
///
/// Deterministic details: the D² draw walks the cumulative sums in point
/// order and takes the first index where the draw falls strictly inside,
/// which resolves ties toward the lowest point index. If rounding pushes
/// the draw to (or past) the total, the last positive-mass point is taken.
/// If all remaining mass is zero — every point duplicates a chosen centroid
/// — the lowest not-yet-chosen index is used.
fn kmeans_plus_plus(rows: &[&[f64]], k: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    let n = rows.len();
    let mut chosen: Vec<usize> = vec![rng.next_index(n)];
    let mut d2: Vec<f64> = rows.iter().map(|row| squared_distance(row, rows[chosen[0]])).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let draw = rng.next_f64() * total;
            let mut cumulative = 0.0;
            let mut pick = None;
            for (i, &mass) in d2.iter().enumerate() {
                cumulative += mass;
                if draw < cumulative {
                    pick = Some(i);
                    break;
                }
            }
            pick.unwrap_or_else(|| {
                d2.iter().rposition(|&mass| mass > 0.0).expect("total mass is positive")
            })
        } else {
            (0..n).find(|i| !chosen.contains(i)).expect("k <= n leaves an unchosen point")
        };
        chosen.push(next);
        for (i, slot) in d2.iter_mut().enumerate() {
            *slot = slot.min(squared_distance(rows[i], rows[next]));
        }
    }
    chosen.into_iter().map(|i| rows[i].to_vec()).collect()
}

/// Lloyd's k-means on the rows of `matrix`, k-means++-seeded from `seed`.
///
/// Iterations alternate assignment (each point to its nearest centroid)
/// and update (each centroid to its cluster's coordinate-wise mean, summed
/// in point order) until an assignment pass changes nothing or `max_iter`
/// cycles have run. A cluster left empty by an assignment pass is re-seeded
/// with the point farthest from its current centroid — skipping points that
/// are their cluster's only member, so the repair never empties another
/// cluster; ties break toward the lowest point index.
///
/// # Errors
///
/// [`Error::InvalidK`] unless `1 <= k <= n`; [`Error::ZeroMaxIter`] if
/// `max_iter` is 0.
///
/// # Examples
///
/// ```
/// use fuzzydist::{build_distance_matrix, kmeans, FuzzySet, Metric};
///
/// let sets: Vec<(String, FuzzySet)> = [0.0f64, 0.1, 0.8, 0.9]
///     .iter()
///     .enumerate()
///     .map(|(i, &v)| {
///         (format!("s{i}"), FuzzySet::from_membership(vec![v, 1.0 - v]).unwrap())
///     })
///     .collect();
/// let matrix = build_distance_matrix(&sets, &Metric::Minkowski { r: 2.0 })?;
///
/// let model = kmeans(&matrix, 2, 7, 100)?;
/// // The two low rows cluster together, as do the two high ones.
/// assert_eq!(model.assignments[0], model.assignments[1]);
/// assert_eq!(model.assignments[2], model.assignments[3]);
/// assert_ne!(model.assignments[0], model.assignments[2]);
/// # Ok::<(), fuzzydist::Error>(())
/// ```
pub fn kmeans(matrix: &DistanceMatrix, k: usize, seed: u64, max_iter: usize) -> Result<ClusterModel> {
    let n = matrix.len();
    if k < 1 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    if max_iter == 0 {
        return Err(Error::ZeroMaxIter);
    }
    let rows: Vec<&[f64]> = (0..n).map(|i| matrix.row(i)).collect();
    let mut rng = SplitMix64::new(seed);
    let mut centroids = kmeans_plus_plus(&rows, k, &mut rng);

    let mut assignments: Vec<usize> = vec![usize::MAX; n]; // sentinel: no pass matches it
    let mut iterations = 0;
    let mut objective_history: Vec<f64> = Vec::new();

    for _ in 0..max_iter {
        let mut new_assignments: Vec<usize> =
            rows.iter().map(|row| nearest(row, &centroids).0).collect();

        let mut counts = vec![0usize; k];
        for &c in &new_assignments {
            counts[c] += 1;
        }
        for cluster in 0..k {
            if counts[cluster] > 0 {
                continue;
            }
            let mut farthest: Option<(f64, usize)> = None;
            for (i, &assigned) in new_assignments.iter().enumerate() {
                if counts[assigned] < 2 {
                    continue; // stealing a singleton would empty its cluster
                }
                let d = squared_distance(rows[i], &centroids[assigned]);
                if farthest.map_or(true, |(best, _)| d > best) {
                    farthest = Some((d, i));
                }
            }
            if let Some((_, steal)) = farthest {
                counts[new_assignments[steal]] -= 1;
                new_assignments[steal] = cluster;
                counts[cluster] = 1;
                // The stolen point is the cluster for now; later repairs and
                // this iteration's monotonicity both see the real position.
                centroids[cluster] = rows[steal].to_vec();
            }
            // No candidate at all (fewer distinct points than k): the
            // cluster stays empty and keeps its centroid.
        }

        if new_assignments == assignments {
            break; // converged: this pass is a pure confirmation, not a cycle
        }
        assignments = new_assignments;

        let mut sums = vec![vec![0.0f64; n]; k];
        let mut sizes = vec![0usize; k];
        for (i, &c) in assignments.iter().enumerate() {
            sizes[c] += 1;
            for (slot, &v) in sums[c].iter_mut().zip(rows[i]) {
                *slot += v;
            }
        }
        for c in 0..k {
            if sizes[c] > 0 {
                centroids[c] = sums[c].iter().map(|&s| s / sizes[c] as f64).collect();
            }
        }
        iterations += 1;

        let objective: f64 = assignments
            .iter()
            .enumerate()
            .map(|(i, &c)| squared_distance(rows[i], &centroids[c]))
            .sum();
        debug_assert!(
            objective_history.last().is_none_or(|&prev| objective <= prev),
            "Lloyd's objective increased: {objective_history:?} then {objective}"
        );
        objective_history.push(objective);
    }

    let point_distances: Vec<f64> = assignments
        .iter()
        .enumerate()
        .map(|(i, &c)| squared_distance(rows[i], &centroids[c]).sqrt())
        .collect();
    let objective = *objective_history.last().expect("max_iter >= 1 runs at least one cycle");

    Ok(ClusterModel {
        k,
        seed,
        assignments,
        centroids,
        point_distances,
        iterations,
        objective,
        objective_history,
    })
}

/// One cluster's membership listing.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClusterSummary {
    /// Cluster index, `0..k`.
    pub cluster: usize,
    /// Number of member points.
    pub size: usize,
    /// Mean member distance to the centroid (0 for an empty cluster).
    pub mean_distance: f64,
    /// Members sorted by distance to the centroid, ascending (ties in input
    /// order).
    pub members: Vec<ClusterMember>,
}

/// One entity inside a [`ClusterSummary`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClusterMember {
    pub name: String,
    pub distance: f64,
}

/// Per-cluster presentation of a [`ClusterModel`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClusterReport {
    pub clusters: Vec<ClusterSummary>,
}

/// Organizes a model into per-cluster listings: members with their
/// distance-to-centroid, sorted by distance within each cluster, plus size
/// and mean distance.
///
/// # Errors
///
/// [`Error::LabelCount`] if `labels` does not match the number of clustered
/// points.
pub fn cluster_report(model: &ClusterModel, labels: &[String]) -> Result<ClusterReport> {
    if labels.len() != model.assignments.len() {
        return Err(Error::LabelCount { labels: labels.len(), points: model.assignments.len() });
    }
    let clusters = (0..model.k)
        .map(|cluster| {
            let mut members: Vec<ClusterMember> = model
                .assignments
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == cluster)
                .map(|(i, _)| ClusterMember {
                    name: labels[i].clone(),
                    distance: model.point_distances[i],
                })
                .collect();
            members.sort_by(|a, b| a.distance.total_cmp(&b.distance));
            let size = members.len();
            let mean_distance = if size == 0 {
                0.0
            } else {
                members.iter().map(|m| m.distance).sum::<f64>() / size as f64
            };
            ClusterSummary { cluster, size, mean_distance, members }
        })
        .collect();
    Ok(ClusterReport { clusters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_distance_matrix, Metric};
    use crate::set::FuzzySet;

    fn toy_matrix() -> DistanceMatrix {
        // Two tight groups: grades near 0 and grades near 1.
        let sets: Vec<(String, FuzzySet)> = [0.0f64, 0.05, 0.1, 0.9, 0.95, 1.0]
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (format!("s{i}"), FuzzySet::from_membership(vec![v, v, 1.0 - v]).unwrap())
            })
            .collect();
        build_distance_matrix(&sets, &Metric::Minkowski { r: 2.0 }).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = toy_matrix();
        assert!(matches!(kmeans(&m, 0, 0, 10), Err(Error::InvalidK { k: 0, n: 6 })));
        assert!(matches!(kmeans(&m, 7, 0, 10), Err(Error::InvalidK { k: 7, n: 6 })));
        assert!(matches!(kmeans(&m, 2, 0, 0), Err(Error::ZeroMaxIter)));
    }

    #[test]
    fn k_one_gives_single_cluster_with_mean_centroid() {
        let m = toy_matrix();
        let model = kmeans(&m, 1, 99, 50).unwrap();
        assert!(model.assignments.iter().all(|&c| c == 0));
        let n = m.len();
        for (j, &coord) in model.centroids[0].iter().enumerate() {
            let mean: f64 = (0..n).map(|i| m.get(i, j)).sum::<f64>() / n as f64;
            assert!((coord - mean).abs() < 1e-15, "coordinate {j}");
        }
    }

    #[test]
    fn k_equals_n_gives_zero_distances() {
        let m = toy_matrix();
        let model = kmeans(&m, m.len(), 3, 50).unwrap();
        assert!(model.point_distances.iter().all(|&d| d == 0.0), "{:?}", model.point_distances);
        let mut sorted = model.assignments.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..m.len()).collect::<Vec<_>>(), "each point its own cluster");
    }

    #[test]
    fn well_separated_groups_recovered_for_every_seed() {
        // Rows from two copies of a crisp set and two of its complement:
        // within a group the rows of D are identical (distance exactly 0),
        // between groups they differ. The D² seeding can then never place
        // both centroids in one group (zero-mass points are never drawn),
        // so every seed recovers the partition — which an exhaustive check
        // over all 2-partitions confirms is the unique global optimum.
        let a = FuzzySet::from_membership(vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        let sets = vec![
            ("a1".to_string(), a.clone()),
            ("a2".to_string(), a.clone()),
            ("b1".to_string(), a.complement()),
            ("b2".to_string(), a.complement()),
        ];
        let m = build_distance_matrix(&sets, &Metric::Minkowski { r: 2.0 }).unwrap();
        for seed in 0..100 {
            let model = kmeans(&m, 2, seed, 100).unwrap();
            assert_eq!(model.assignments[0], model.assignments[1], "seed {seed}");
            assert_eq!(model.assignments[2], model.assignments[3], "seed {seed}");
            assert_ne!(model.assignments[0], model.assignments[2], "seed {seed}");
            assert!(model.point_distances.iter().all(|&d| d == 0.0), "seed {seed}");
        }
    }

    #[test]
    fn identical_runs_are_bit_identical() {
        let m = toy_matrix();
        let a = kmeans(&m, 3, 1234, 100).unwrap();
        let b = kmeans(&m, 3, 1234, 100).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn objective_history_is_monotone_and_final() {
        let m = toy_matrix();
        let model = kmeans(&m, 2, 42, 100).unwrap();
        assert_eq!(model.objective_history.len(), model.iterations);
        for pair in model.objective_history.windows(2) {
            assert!(pair[1] <= pair[0], "objective rose: {pair:?}");
        }
        assert_eq!(model.objective, *model.objective_history.last().unwrap());
    }

    #[test]
    fn converged_assignments_are_locally_optimal() {
        let m = toy_matrix();
        let model = kmeans(&m, 3, 7, 100).unwrap();
        assert!(model.iterations < 100, "toy input must converge before the cap");
        for (i, &assigned) in model.assignments.iter().enumerate() {
            let own = squared_distance(m.row(i), &model.centroids[assigned]);
            for other in 0..model.k {
                let alt = squared_distance(m.row(i), &model.centroids[other]);
                assert!(own <= alt, "point {i} would prefer cluster {other}");
            }
        }
    }

    #[test]
    fn duplicate_points_with_k_equal_n_still_fill_all_clusters() {
        // All four rows identical: seeding falls back to unchosen indices,
        // assignment sends everyone to cluster 0, and the empty-cluster
        // repair (with its singleton exclusion) must spread them out.
        let labels: Vec<String> = (0..4).map(|i| format!("p{i}")).collect();
        let matrix =
            DistanceMatrix::new(labels, vec![vec![0.0; 4]; 4]).unwrap();
        let model = kmeans(&matrix, 4, 11, 50).unwrap();
        let mut sorted = model.assignments.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        assert!(model.point_distances.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn report_groups_sorts_and_averages() {
        let m = toy_matrix();
        let model = kmeans(&m, 2, 5, 100).unwrap();
        let labels: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
        let report = cluster_report(&model, &labels).unwrap();

        assert_eq!(report.clusters.len(), 2);
        let total: usize = report.clusters.iter().map(|c| c.size).sum();
        assert_eq!(total, 6);
        for summary in &report.clusters {
            assert_eq!(summary.size, summary.members.len());
            for pair in summary.members.windows(2) {
                assert!(pair[0].distance <= pair[1].distance, "members out of order");
            }
            if summary.size > 0 {
                let mean: f64 =
                    summary.members.iter().map(|m| m.distance).sum::<f64>() / summary.size as f64;
                assert!((summary.mean_distance - mean).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn report_rejects_wrong_label_count() {
        let m = toy_matrix();
        let model = kmeans(&m, 2, 5, 100).unwrap();
        let short = vec!["a".to_string()];
        assert!(matches!(
            cluster_report(&model, &short),
            Err(Error::LabelCount { labels: 1, points: 6 })
        ));
    }
}
