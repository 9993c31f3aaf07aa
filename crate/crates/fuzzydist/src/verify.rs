//! Runnable property suites for the crate's distance functions.
//!
//! The same checks that guard this crate in CI are exposed here as a
//! library call, so a deployment (or a skeptical user) can re-verify the
//! semi-metric axioms and numeric conventions on their own machine — see
//! the CLI's `selftest` command. Inputs are generated from a fixed
//! [`SplitMix64`] seed, so a failure is reproducible, and each property
//! reports its first counterexample.
//!
//! [`run_suite_with`] accepts the pair-distance function to test, which
//! lets negative-path tests inject a deliberately broken metric and watch
//! the right properties object.

use crate::entropy::binary_entropy;
use crate::error::Result;
use crate::metrics::{
    entropy_distance, hausdorff_fuzzy, minkowski_distance, s1_distance,
    weighted_entropy_distance, WeightVector,
};
use crate::rng::SplitMix64;
use crate::set::FuzzySet;

/// Domain size for the randomized checks.
const N: usize = 20;

/// How a property suite is driven.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Seed for the input generator. The CLI always uses the default, so
    /// its runs are comparable across machines.
    pub seed: u64,
    /// Iteration count for the heavy randomized properties; the cheaper
    /// ones run fixed counts.
    pub triples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7, triples: 10_000 }
    }
}

/// Verdict for one property.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    /// Short stable name, suitable for one line of output.
    pub name: &'static str,
    pub passed: bool,
    /// The first counterexample if failed, else a summary of what ran.
    pub detail: String,
}

/// All property verdicts from one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    /// True when every property held.
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    /// The first failed property, if any.
    pub fn first_failure(&self) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

/// A pair-distance function under test.
pub type PairDistanceFn<'a> = &'a dyn Fn(&FuzzySet, &FuzzySet) -> Result<f64>;

/// Tracks one property across many cases, keeping the first failure.
struct Check {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failure: None }
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
    }

    fn outcome(self) -> PropertyOutcome {
        match self.failure {
            Some(detail) => PropertyOutcome { name: self.name, passed: false, detail },
            None => PropertyOutcome {
                name: self.name,
                passed: true,
                detail: format!("{} cases", self.cases),
            },
        }
    }
}

fn random_set(rng: &mut SplitMix64, n: usize) -> FuzzySet {
    let grades = (0..n).map(|_| rng.next_f64()).collect();
    FuzzySet::from_membership(grades).expect("uniform draws are valid grades")
}

fn random_crisp(rng: &mut SplitMix64, n: usize) -> FuzzySet {
    let grades = (0..n).map(|_| if rng.next_u64() & 1 == 1 { 1.0 } else { 0.0 }).collect();
    FuzzySet::from_membership(grades).expect("0/1 are valid grades")
}

fn random_permutation(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_index(i + 1);
        perm.swap(i, j);
    }
    perm
}

fn permuted(set: &FuzzySet, perm: &[usize]) -> FuzzySet {
    let grades = perm.iter().map(|&i| set.membership()[i]).collect();
    FuzzySet::from_membership(grades).expect("a permutation preserves validity")
}

/// Triangular membership with real-valued center and half-width — a
/// piecewise-linear "hill" whose level sets are intervals — quantized to
/// two decimals, the precision of the data this tool ingests. At that
/// precision the cut function only changes at multiples of 0.01, which
/// the midpoint level grids never touch, so refining the grid must not
/// move the distance.
fn triangle_set(n: usize, center: f64, halfwidth: f64) -> FuzzySet {
    let grades = (1..=n)
        .map(|x| {
            let v = (1.0 - (x as f64 - center).abs() / halfwidth).max(0.0);
            (v * 100.0).round() / 100.0
        })
        .collect();
    FuzzySet::from_membership(grades).expect("clamped values are valid grades")
}

/// Runs every property against the crate's own entropy distance.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    run_suite_with(config, &|a, b| entropy_distance(a, b))
}

/// Runs every property, testing `dist` wherever the entropy distance is
/// the subject. Properties about other functions (Minkowski, S₁,
/// Hausdorff, the weighted reduction) always exercise the real
/// implementations.
pub fn run_suite_with(config: &SuiteConfig, dist: PairDistanceFn) -> SuiteReport {
    let mut rng = SplitMix64::new(config.seed);
    let d = |a: &FuzzySet, b: &FuzzySet| dist(a, b).expect("suite sets share a domain");
    let mut outcomes = Vec::new();

    // Semi-metric axioms, one generation pass for all four.
    {
        let mut nonneg = Check::new("non-negativity");
        let mut symmetry = Check::new("symmetry (bit-for-bit)");
        let mut self_zero = Check::new("self-distance is exactly zero");
        let mut triangle = Check::new("triangle inequality (slack 1e-9)");
        for _ in 0..config.triples {
            let a = random_set(&mut rng, N);
            let b = random_set(&mut rng, N);
            let c = random_set(&mut rng, N);
            let dab = d(&a, &b);
            let dba = d(&b, &a);
            let daa = d(&a, &a);
            let dac = d(&a, &c);
            let dbc = d(&b, &c);

            nonneg.case(dab >= 0.0, || format!("dist = {dab} for A={a:?}, B={b:?}"));
            symmetry.case(dab.to_bits() == dba.to_bits(), || {
                format!("dist(A,B) = {dab:?} but dist(B,A) = {dba:?} for A={a:?}, B={b:?}")
            });
            self_zero.case(daa == 0.0, || format!("dist(A,A) = {daa} for A={a:?}"));
            triangle.case(dac <= dab + dbc + 1e-9, || {
                format!(
                    "dist(A,C) = {dac} > {} = dist(A,B) + dist(B,C) + 1e-9 \
                     for A={a:?}, B={b:?}, C={c:?}",
                    dab + dbc + 1e-9
                )
            });
        }
        outcomes.extend([nonneg.outcome(), symmetry.outcome(), self_zero.outcome(), triangle.outcome()]);
    }

    // The pointwise inequality the distance's triangle property rests on.
    {
        let mut check = Check::new("entropy subadditivity H(p+q) <= H(p)+H(q)");
        for _ in 0..config.triples {
            let x = rng.next_f64();
            let y = rng.next_f64();
            let (s, t) = if x <= y { (x, y) } else { (y, x) };
            // Reflect draws with s+t > 1 back into the valid region.
            let (p, q) = if s + t <= 1.0 { (s, t) } else { (1.0 - t, 1.0 - s) };
            let lhs = binary_entropy(p + q).expect("p+q stays in [0,1]");
            let rhs = binary_entropy(p).unwrap() + binary_entropy(q).unwrap();
            check.case(lhs <= rhs + 1e-12, || {
                format!("H({p}+{q}) = {lhs} > {rhs} + 1e-12")
            });
        }
        outcomes.push(check.outcome());
    }

    // Crisp sets: the distance to the complement vanishes identically.
    {
        let mut check = Check::new("crisp complement distance is exactly zero");
        for _ in 0..1000 {
            let a = random_crisp(&mut rng, N);
            let dac = d(&a, &a.complement());
            check.case(dac == 0.0, || format!("dist(A, complement) = {dac} for A={a:?}"));
        }
        outcomes.push(check.outcome());
    }

    // Relabeling the domain (same permutation on both sets) changes nothing.
    {
        let mut check = Check::new("permutation invariance (bit-for-bit)");
        for _ in 0..1000 {
            let a = random_set(&mut rng, N);
            let b = random_set(&mut rng, N);
            let perm = random_permutation(&mut rng, N);
            let before = d(&a, &b);
            let after = d(&permuted(&a, &perm), &permuted(&b, &perm));
            check.case(before.to_bits() == after.to_bits(), || {
                format!("{before:?} != {after:?} under {perm:?} for A={a:?}, B={b:?}")
            });
        }
        outcomes.push(check.outcome());
    }

    // max−min and |a−b| formulations agree: routing the absolute
    // differences through a second distance call (against the empty set)
    // must reproduce the direct distance exactly.
    {
        let mut check = Check::new("formulation equivalence (bit-for-bit)");
        let zero = FuzzySet::from_membership(vec![0.0; N]).expect("zeros are valid grades");
        for _ in 0..config.triples {
            let a = random_set(&mut rng, N);
            let b = random_set(&mut rng, N);
            let direct = d(&a, &b);
            let diff = a.symmetric_difference(&b).expect("same domain");
            let via_diff = d(&diff, &zero);
            check.case(direct.to_bits() == via_diff.to_bits(), || {
                format!("{direct:?} != {via_diff:?} for A={a:?}, B={b:?}")
            });
        }
        outcomes.push(check.outcome());
    }

    // One maximally uncertain element costs exactly one bit: this pins the
    // logarithm base (a natural-log or base-10 variant scores 0.693/0.301).
    {
        let mut check = Check::new("unit scale: dist(empty, all-half) is one bit");
        let empty = FuzzySet::from_membership(vec![0.0; N]).expect("valid grades");
        let half = FuzzySet::from_membership(vec![0.5; N]).expect("valid grades");
        let got = d(&empty, &half);
        check.case(got == 1.0, || format!("dist = {got}, expected exactly 1.0"));
        outcomes.push(check.outcome());
    }

    // Uniform weights recover the unweighted distance.
    {
        let mut check = Check::new("uniform weights reduce to the plain distance");
        let uniform = WeightVector::uniform(N).expect("N > 0");
        for _ in 0..1000 {
            let a = random_set(&mut rng, N);
            let b = random_set(&mut rng, N);
            let plain = entropy_distance(&a, &b).expect("same domain");
            let weighted =
                weighted_entropy_distance(&a, &b, &uniform).expect("same domain");
            check.case((plain - weighted).abs() <= 1e-15, || {
                format!("plain {plain} vs uniform-weighted {weighted}")
            });
        }
        outcomes.push(check.outcome());
    }

    // Minkowski distances are true metrics for r >= 1.
    {
        let mut check = Check::new("Minkowski metric axioms for r in {1, 2, 3}");
        for _ in 0..config.triples.div_euclid(10).max(1000) {
            let a = random_set(&mut rng, N);
            let b = random_set(&mut rng, N);
            let c = random_set(&mut rng, N);
            for r in [1.0, 2.0, 3.0] {
                let dab = minkowski_distance(&a, &b, r).expect("same domain");
                let dba = minkowski_distance(&b, &a, r).expect("same domain");
                let daa = minkowski_distance(&a, &a, r).expect("same domain");
                let dac = minkowski_distance(&a, &c, r).expect("same domain");
                let dbc = minkowski_distance(&b, &c, r).expect("same domain");
                let ok = dab >= 0.0
                    && dab.to_bits() == dba.to_bits()
                    && daa == 0.0
                    && dac <= dab + dbc + 1e-9;
                check.case(ok, || {
                    format!(
                        "r={r}: d(A,B)={dab}, d(B,A)={dba}, d(A,A)={daa}, \
                         d(A,C)={dac}, d(A,B)+d(B,C)={}",
                        dab + dbc
                    )
                });
            }
        }
        outcomes.push(check.outcome());
    }

    // Cardinality-ratio distance: range and exact zero on equal sets.
    {
        let mut check = Check::new("S1 range [0,1] and exact self-zero");
        for _ in 0..1000 {
            let a = random_set(&mut rng, N);
            let b = random_set(&mut rng, N);
            let dab = s1_distance(&a, &b).expect("same domain");
            let daa = s1_distance(&a, &a).expect("same domain");
            check.case((0.0..=1.0).contains(&dab) && daa == 0.0, || {
                format!("S1(A,B) = {dab}, S1(A,A) = {daa}")
            });
        }
        outcomes.push(check.outcome());
    }

    // The alpha-level Hausdorff approximation is grid-stable: refining the
    // midpoint rule tenfold moves the result by less than 5/M.
    {
        let mut check = Check::new("Hausdorff alpha-grid stability (5/M)");
        let m = 100usize;
        let bound = 5.0 / m as f64;
        for _ in 0..50 {
            let a = triangle_set(
                N,
                4.0 + 13.0 * rng.next_f64(),
                4.0 + 6.0 * rng.next_f64(),
            );
            let b = triangle_set(
                N,
                4.0 + 13.0 * rng.next_f64(),
                4.0 + 6.0 * rng.next_f64(),
            );
            let coarse = hausdorff_fuzzy(&a, &b, m).expect("same domain");
            let fine = hausdorff_fuzzy(&a, &b, 10 * m).expect("same domain");
            check.case((coarse - fine).abs() < bound, || {
                format!(
                    "|{coarse} - {fine}| = {} >= {bound} for A={a:?}, B={b:?}",
                    (coarse - fine).abs()
                )
            });
        }
        outcomes.push(check.outcome());
    }

    SuiteReport { outcomes }
}
