//! Pairwise distance matrices over labeled fuzzy sets.
//!
//! [`build_distance_matrix`] evaluates one of the crate's metrics on every
//! unordered pair of sets and mirrors the result, so the output is symmetric
//! bit for bit and has an exactly zero diagonal by construction. Rows of the
//! matrix double as feature vectors for the clustering in
//! [`kmeans`](crate::kmeans::kmeans).

use std::io::Write;
use std::thread;

use crate::error::{Error, Result};
use crate::metrics::{
    bonissone_distance, entropy_distance, hausdorff_fuzzy, minkowski_distance, s1_distance,
    weighted_entropy_distance, WeightVector,
};
use crate::set::FuzzySet;

/// Which distance to evaluate, with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// Mean binary entropy of the symmetric difference, in bits.
    Entropy,
    /// Entropy distance under a non-uniform element distribution.
    WeightedEntropy(WeightVector),
    /// Minkowski distance of order `r` on membership vectors.
    Minkowski { r: f64 },
    /// Alpha-level Hausdorff distance with `levels` midpoint samples.
    Hausdorff { levels: usize },
    /// Cardinality-ratio (fuzzy Jaccard) distance.
    S1,
    /// Euclidean distance of Bonissone feature vectors.
    Bonissone,
}

impl Metric {
    /// Evaluates this metric on one pair.
    ///
    /// # Errors
    ///
    /// Whatever the underlying distance function reports — domain
    /// mismatches, invalid parameters, zero-power sets.
    pub fn distance(&self, a: &FuzzySet, b: &FuzzySet) -> Result<f64> {
        match self {
            Metric::Entropy => entropy_distance(a, b),
            Metric::WeightedEntropy(w) => weighted_entropy_distance(a, b, w),
            Metric::Minkowski { r } => minkowski_distance(a, b, *r),
            Metric::Hausdorff { levels } => hausdorff_fuzzy(a, b, *levels),
            Metric::S1 => s1_distance(a, b),
            Metric::Bonissone => bonissone_distance(a, b),
        }
    }

    /// The metric's short name, as used in CLI flags and error messages.
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Entropy => "entropy",
            Metric::WeightedEntropy(_) => "weighted",
            Metric::Minkowski { .. } => "minkowski",
            Metric::Hausdorff { .. } => "hausdorff",
            Metric::S1 => "s1",
            Metric::Bonissone => "bonissone",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Metric::Minkowski { r } => write!(f, "minkowski(r={r})"),
            Metric::Hausdorff { levels } => write!(f, "hausdorff(levels={levels})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A symmetric matrix of pairwise distances with named rows/columns.
///
/// Guaranteed by construction (and re-checked by [`DistanceMatrix::new`]):
/// `values[i][j] == values[j][i]` bit for bit, `values[i][i] == 0` exactly,
/// and every entry is finite and non-negative.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Validates and wraps an externally assembled matrix.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidMatrix`] describing the first violated invariant:
    /// non-square shape, label/shape mismatch, duplicate labels, non-zero
    /// diagonal, bitwise asymmetry, or a negative/non-finite entry.
    pub fn new(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::TooFewSets(n));
        }
        if values.len() != n {
            return Err(Error::InvalidMatrix(format!(
                "{} labels but {} rows",
                n,
                values.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateSetLabel(label.clone()));
            }
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({}, {}) = {v} is negative or not finite",
                        i + 1,
                        j + 1
                    )));
                }
                if i == j && v != 0.0 {
                    return Err(Error::InvalidMatrix(format!(
                        "diagonal entry {} = {v} is not exactly zero",
                        i + 1
                    )));
                }
                if j < i && v.to_bits() != values[j][i].to_bits() {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({}, {}) and ({}, {}) are not bitwise equal",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(DistanceMatrix { labels, values })
    }

    /// Number of rows (= columns).
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: construction requires at least two sets.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row/column names, in order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The full matrix, row-major.
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// One row as a feature vector (0-based row index).
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    /// The entry at (0-based) row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    /// Position of `label`, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Writes the matrix as CSV: a header of `name` plus the labels, then
    /// one row per entity (label first). Values carry 12 significant digits
    /// — enough to compare against an independent implementation at 1e-12.
    ///
    /// # Errors
    ///
    /// Any I/O or CSV-formatting failure from the underlying writer.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        let header = std::iter::once("name".to_string()).chain(self.labels.iter().cloned());
        out.write_record(header)?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let record = std::iter::once(label.clone())
                .chain(row.iter().map(|&v| format_significant(v, 12)));
            out.write_record(record)?;
        }
        out.flush().map_err(Error::from)?;
        Ok(())
    }
}

/// Formats `value` with `sig_digits` significant digits, trimming trailing
/// zeros — plain decimal notation for moderate exponents, scientific for
/// extreme ones. This is the one formatter behind every numeric file the
/// crate writes, so file consumers see a single convention.
///
/// # Panics
///
/// If `sig_digits` is 0.
///
/// # Examples
///
/// ```
/// use fuzzydist::format_significant;
///
/// assert_eq!(format_significant(0.7514331325727802, 12), "0.751433132573");
/// assert_eq!(format_significant(1.0, 12), "1");
/// assert_eq!(format_significant(0.0, 12), "0");
/// assert_eq!(format_significant(2.5e-17, 12), "2.5e-17");
/// ```
pub fn format_significant(value: f64, sig_digits: usize) -> String {
    assert!(sig_digits > 0, "at least one significant digit is required");
    if value == 0.0 {
        return "0".to_string();
    }
    // {:e} with sig_digits-1 decimals gives d.ddd…e±x; the exponent decides
    // the presentation.
    let sci = format!("{:.*e}", sig_digits - 1, value);
    let (mantissa, exp_str) = sci.split_once('e').expect("{:e} always contains an exponent");
    let exp: i32 = exp_str.parse().expect("{:e} exponents are integers");
    if (-4..sig_digits as i32).contains(&exp) {
        let decimals = (sig_digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{value:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

/// Drops trailing fractional zeros ("1.2500" → "1.25", "1.000" → "1").
fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Evaluates `metric` on every unordered pair of `sets` sequentially and
/// mirrors the results into a [`DistanceMatrix`].
///
/// # Errors
///
/// [`Error::TooFewSets`] for fewer than two sets;
/// [`Error::DuplicateSetLabel`] for repeated names;
/// [`Error::DomainMismatch`] if the sets don't share one domain size;
/// [`Error::PairDistance`] wrapping the first per-pair metric failure.
///
/// # Examples
///
/// ```
/// use fuzzydist::{build_distance_matrix, FuzzySet, Metric};
///
/// let a = FuzzySet::from_membership(vec![1.0, 0.0])?;
/// let sets = vec![
///     ("a".to_string(), a.clone()),
///     ("not-a".to_string(), a.complement()),
/// ];
/// let matrix = build_distance_matrix(&sets, &Metric::Entropy)?;
/// // The entropy distance cannot tell a crisp set from its complement.
/// assert_eq!(matrix.get(0, 1), 0.0);
/// # Ok::<(), fuzzydist::Error>(())
/// ```
pub fn build_distance_matrix(
    sets: &[(String, FuzzySet)],
    metric: &Metric,
) -> Result<DistanceMatrix> {
    build_distance_matrix_parallel(sets, metric, 1)
}

/// [`build_distance_matrix`] with the pair evaluations spread over
/// `threads` worker threads.
///
/// The result is bit-identical for every thread count: the metric functions
/// are pure, each pair is computed exactly once, and the assembly order is
/// fixed regardless of which thread produced which value. `threads` of 0 or
/// 1 mean sequential; counts beyond the number of pairs are clamped.
///
/// # Errors
///
/// As [`build_distance_matrix`].
pub fn build_distance_matrix_parallel(
    sets: &[(String, FuzzySet)],
    metric: &Metric,
    threads: usize,
) -> Result<DistanceMatrix> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::TooFewSets(n));
    }
    let mut seen = std::collections::HashSet::new();
    for (label, _) in sets {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateSetLabel(label.clone()));
        }
    }
    let first_len = sets[0].1.len();
    for (_, set) in sets {
        if set.len() != first_len {
            return Err(Error::DomainMismatch { left: first_len, right: set.len() });
        }
    }

    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();

    let computed: Vec<Result<f64>> = if threads <= 1 || pairs.len() <= 1 {
        pairs.iter().map(|&(i, j)| metric.distance(&sets[i].1, &sets[j].1)).collect()
    } else {
        let workers = threads.min(pairs.len());
        let mut slots: Vec<Option<Result<f64>>> = Vec::new();
        slots.resize_with(pairs.len(), || None);
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|worker| {
                    let pairs = &pairs;
                    scope.spawn(move || {
                        // Round-robin striding keeps the partition a pure
                        // function of (pairs, workers), independent of timing.
                        pairs
                            .iter()
                            .enumerate()
                            .skip(worker)
                            .step_by(workers)
                            .map(|(idx, &(i, j))| {
                                (idx, metric.distance(&sets[i].1, &sets[j].1))
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                for (idx, value) in handle.join().expect("metric workers do not panic") {
                    slots[idx] = Some(value);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every pair index was computed")).collect()
    };

    let mut values = vec![vec![0.0f64; n]; n];
    // Errors surface in pair order, so which failure a caller sees does not
    // depend on the thread count either.
    for (&(i, j), value) in pairs.iter().zip(computed) {
        let d = value.map_err(|source| Error::PairDistance {
            metric: metric.name().to_string(),
            left: sets[i].0.clone(),
            right: sets[j].0.clone(),
            source: Box::new(source),
        })?;
        values[i][j] = d;
        values[j][i] = d;
    }

    let labels = sets.iter().map(|(label, _)| label.clone()).collect();
    DistanceMatrix::new(labels, values)
}
