//! The binary entropy function, the kernel every entropy distance is built on.

use crate::error::{Error, Result};

/// Binary entropy in bits: `H(p) = -p log2(p) - (1-p) log2(1-p)`.
///
/// The endpoint convention `0 * log2(0) = 0` is implemented as an early
/// return, so `binary_entropy(0.0)` and `binary_entropy(1.0)` are exactly
/// `0.0` — no rounding residue, no NaN from `0 * -inf`. That exactness is
/// what makes the complement identity of
/// [`entropy_distance`](crate::metrics::entropy_distance) hold exactly for
/// crisp sets rather than merely to within a tolerance.
///
/// `H` is symmetric (`H(p) == H(1-p)`), concave, and maximal at
/// `binary_entropy(0.5) == 1.0` (one full bit). The mirror identity is
/// bit-for-bit whenever `1.0 - p` is itself exact (every dyadic grade such
/// as `k / 2^20`); for arbitrary `p` the subtraction rounds first, so the
/// two sides can differ by a few units in the last place — well under
/// `1e-14` in absolute terms.
///
/// # Errors
///
/// [`Error::ProbabilityRange`] if `p` is NaN, infinite, or outside [0, 1].
///
/// # Examples
///
/// ```
/// use fuzzydist::binary_entropy;
///
/// assert_eq!(binary_entropy(0.0)?, 0.0);
/// assert_eq!(binary_entropy(0.5)?, 1.0);
/// assert!((binary_entropy(0.25)? - 0.811278124459).abs() < 1e-12);
/// assert!(binary_entropy(1.5).is_err());
/// # Ok::<(), fuzzydist::Error>(())
/// ```
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    Ok(h2(p))
}

/// `binary_entropy` without the range check, for internal call sites whose
/// inputs are grades already validated into [0, 1].
pub(crate) fn h2(p: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    let q = 1.0 - p;
    -p * p.log2() - q * q.log2()
}
