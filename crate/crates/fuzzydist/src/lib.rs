//! Entropy-based distances between fuzzy sets, with clustering on top.
//!
//! A fuzzy set over a finite domain assigns each element a membership
//! grade in `[0, 1]`. This crate measures how far apart two such sets are
//! by asking how *uncertain* their disagreement is: take the pointwise
//! absolute difference of the membership vectors, score each value with
//! the binary entropy function, and average. Identical sets score `0`;
//! sets that disagree by exactly `½` everywhere — the maximally ambiguous
//! case — score `1` bit, the largest possible value.
//!
//! ```
//! use fuzzydist::{entropy_distance, FuzzySet};
//!
//! let a = FuzzySet::from_membership(vec![0.3, 0.9, 1.0])?;
//! let b = FuzzySet::from_membership(vec![0.3, 0.4, 0.0])?;
//! // Disagreements: 0.0, 0.5, 1.0 — scoring 0, 1, and 0 bits.
//! let d = entropy_distance(&a, &b)?;
//! assert!((d - 1.0 / 3.0).abs() < 1e-15);
//! # Ok::<(), fuzzydist::Error>(())
//! ```
//!
//! # What's in the box
//!
//! - [`FuzzySet`] and [`Domain`]: validated membership vectors over a
//!   finite domain, with the Zadeh operations (union, intersection,
//!   complement, symmetric difference) and alpha-cuts.
//! - [`binary_entropy`] and [`entropy_distance`] /
//!   [`weighted_entropy_distance`]: the headline distance, deterministic
//!   down to the bit — symmetric and permutation-invariant by
//!   construction, not just up to rounding.
//! - Baselines to compare against: [`minkowski_distance`],
//!   [`hausdorff_crisp`] / [`hausdorff_fuzzy`], [`s1_distance`], and the
//!   four-feature [`bonissone_distance`].
//! - [`build_distance_matrix`] / [`build_distance_matrix_parallel`]: full
//!   pairwise matrices, bit-identical regardless of thread count.
//! - [`kmeans`]: seeded, fully deterministic k-means (distance-squared
//!   seeding plus Lloyd iterations) for clustering rows of a distance
//!   matrix, with [`cluster_report`] for human-readable summaries.
//! - [`Dataset`]: CSV ingestion, min–max normalization to membership
//!   grades, and a bundled 28-country survey fixture ([`Dataset::table1`])
//!   used throughout the docs and tests.
//! - [`verify`]: the crate's own property suites (semi-metric axioms,
//!   exactness guarantees, grid stability), runnable at deploy time.
//!
//! # Numeric contract
//!
//! Floating-point results here are reproducible, not merely close:
//! swapping the two arguments, permuting the domain (consistently on both
//! sides), or changing the thread count of a matrix build returns the
//! same 64 bits. The crate achieves this by evaluating per-element terms
//! symmetrically and summing them in value order. Exact guarantees — the
//! self-distance, the crisp complement distance, and endpoint entropies —
//! hold with `== 0.0`, no epsilon.

pub mod dataset;
pub mod entropy;
pub mod error;
pub mod kmeans;
pub mod matrix;
pub mod metrics;
pub mod rng;
pub mod set;
pub mod verify;

pub use dataset::Dataset;
pub use entropy::binary_entropy;
pub use error::{Error, Result};
pub use kmeans::{
    cluster_report, kmeans, ClusterMember, ClusterModel, ClusterReport, ClusterSummary,
    DEFAULT_K, DEFAULT_MAX_ITER,
};
pub use matrix::{
    build_distance_matrix, build_distance_matrix_parallel, format_significant,
    DistanceMatrix, Metric,
};
pub use metrics::{
    bonissone_distance, bonissone_features, cardinality, entropy_distance,
    hausdorff_crisp, hausdorff_fuzzy, minkowski_distance, s1_distance,
    weighted_entropy_distance, BonissoneFeatures, WeightVector, DEFAULT_ALPHA_LEVELS,
};
pub use rng::SplitMix64;
pub use set::{Domain, FuzzySet};
pub use verify::{run_suite, run_suite_with, PropertyOutcome, SuiteConfig, SuiteReport};

// Compile and run every code block in the guide as part of `cargo test`,
// so the book can never drift from the library it documents.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fuzzy-sets.md")]
    mod fuzzy_sets {}
    #[doc = include_str!("../../../book/src/entropy-distance.md")]
    mod entropy_distance {}
    #[doc = include_str!("../../../book/src/baseline-distances.md")]
    mod baseline_distances {}
    #[doc = include_str!("../../../book/src/clustering.md")]
    mod clustering {}
    #[doc = include_str!("../../../book/src/data-and-cli.md")]
    mod data_and_cli {}
}
