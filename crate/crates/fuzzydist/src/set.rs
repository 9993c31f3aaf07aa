//! Finite domains and the fuzzy sets that live on them.
//!
//! A [`Domain`] is an ordered, finite collection of elements, addressed by
//! 1-based index and optionally named. A [`FuzzySet`] attaches a membership
//! grade in [0, 1] to every element of its domain. All set algebra here is
//! the classic max/min (Zadeh) variety.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered finite universe of elements, optionally labeled.
///
/// Elements are addressed 1-based everywhere a user can see an index —
/// alpha-cuts, centroid coordinates, error messages — because that is how the
/// underlying math (and any table you would print) numbers them.
///
/// Cloning is cheap: labels are shared behind an [`Arc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl Domain {
    /// An anonymous domain of `size` elements, addressed only by index.
    ///
    /// # Errors
    ///
    /// [`Error::EmptyDomain`] if `size` is 0.
    pub fn unlabeled(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(Domain { size, labels: None })
    }

    /// A domain whose elements carry names (all distinct).
    ///
    /// # Errors
    ///
    /// [`Error::EmptyDomain`] if no labels are given;
    /// [`Error::DuplicateLabel`] if two labels coincide.
    pub fn labeled<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Domain { size: labels.len(), labels: Some(labels.into()) })
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Element labels, if this domain has any.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The name of element `index` (1-based), if labels exist.
    pub fn label(&self, index: usize) -> Option<&str> {
        let labels = self.labels.as_deref()?;
        labels.get(index.checked_sub(1)?).map(String::as_str)
    }
}

/// A fuzzy set: one membership grade in [0, 1] per domain element.
///
/// Construction validates every grade, so the rest of the crate can assume
/// grades are finite and in range. Two sets are compatible for binary
/// operations when their domains have the same size.
///
/// # Examples
///
/// ```
/// use fuzzydist::FuzzySet;
///
/// let a = FuzzySet::from_membership(vec![0.0, 0.3, 1.0])?;
/// let b = FuzzySet::from_membership(vec![0.2, 0.3, 0.4])?;
///
/// let union = a.union(&b)?;
/// assert_eq!(union.membership(), &[0.2, 0.3, 1.0]);
///
/// assert!(!a.is_crisp());
/// assert!(FuzzySet::from_membership(vec![0.0, 1.0])?.is_crisp());
/// # Ok::<(), fuzzydist::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    domain: Domain,
    membership: Vec<f64>,
}

impl FuzzySet {
    /// Builds a set over `domain` from one grade per element.
    ///
    /// # Errors
    ///
    /// [`Error::MembershipLength`] if the vector does not match the domain
    /// size; [`Error::MembershipRange`] if any grade is NaN, infinite, or
    /// outside [0, 1] (the index in the error is 1-based).
    pub fn new(domain: Domain, membership: Vec<f64>) -> Result<Self> {
        if membership.len() != domain.size() {
            return Err(Error::MembershipLength { expected: domain.size(), got: membership.len() });
        }
        for (i, &value) in membership.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::MembershipRange { index: i + 1, value });
            }
        }
        Ok(FuzzySet { domain, membership })
    }

    /// Builds a set over a fresh unlabeled domain of matching size.
    pub fn from_membership(membership: Vec<f64>) -> Result<Self> {
        let domain = Domain::unlabeled(membership.len())?;
        FuzzySet::new(domain, membership)
    }

    /// The domain this set lives on.
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The membership grades, in domain order.
    pub fn membership(&self) -> &[f64] {
        &self.membership
    }

    /// Number of domain elements.
    pub fn len(&self) -> usize {
        self.membership.len()
    }

    /// Always false: domains have at least one element by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The grade of element `index` (1-based).
    pub fn grade(&self, index: usize) -> Option<f64> {
        self.membership.get(index.checked_sub(1)?).copied()
    }

    fn check_compatible(&self, other: &FuzzySet) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DomainMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(f64, f64) -> f64) -> Result<FuzzySet> {
        self.check_compatible(other)?;
        let membership =
            self.membership.iter().zip(&other.membership).map(|(&a, &b)| f(a, b)).collect();
        Ok(FuzzySet { domain: self.domain.clone(), membership })
    }

    /// Pointwise maximum (Zadeh union).
    ///
    /// # Errors
    ///
    /// [`Error::DomainMismatch`] if the domains differ in size.
    pub fn union(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, f64::max)
    }

    /// Pointwise minimum (Zadeh intersection).
    ///
    /// # Errors
    ///
    /// [`Error::DomainMismatch`] if the domains differ in size.
    pub fn intersection(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, f64::min)
    }

    /// Pointwise `1 - m(x)` (standard complement).
    pub fn complement(&self) -> FuzzySet {
        let membership = self.membership.iter().map(|&v| 1.0 - v).collect();
        FuzzySet { domain: self.domain.clone(), membership }
    }

    /// Pointwise absolute difference `|m_A(x) - m_B(x)|`, computed as
    /// `max(a, b) - min(a, b)`.
    ///
    /// For grades in [0, 1] the two formulations are identical bit for bit:
    /// `max - min` subtracts the same pair of floats that `|a - b|` does,
    /// in the same order. The crate's distance functions are built on this
    /// set, so anything proved about one formulation transfers to the other.
    ///
    /// # Errors
    ///
    /// [`Error::DomainMismatch`] if the domains differ in size.
    pub fn symmetric_difference(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, |a, b| a.max(b) - a.min(b))
    }

    /// True when every grade is exactly 0 or exactly 1.
    pub fn is_crisp(&self) -> bool {
        self.membership.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// The alpha-cut: 1-based indices of elements with grade >= `alpha`,
    /// ascending.
    ///
    /// # Errors
    ///
    /// [`Error::AlphaRange`] unless `alpha` lies in (0, 1]. (At alpha = 0 the
    /// cut would always be the whole domain regardless of the set, which is
    /// never what a caller wants; the convention here excludes it.)
    ///
    /// # Examples
    ///
    /// ```
    /// use fuzzydist::FuzzySet;
    ///
    /// let a = FuzzySet::from_membership(vec![0.2, 0.7, 1.0])?;
    /// assert_eq!(a.alpha_cut(0.5)?, vec![2, 3]);
    /// assert_eq!(a.alpha_cut(1.0)?, vec![3]);
    /// assert!(a.alpha_cut(0.0).is_err());
    /// # Ok::<(), fuzzydist::Error>(())
    /// ```
    pub fn alpha_cut(&self, alpha: f64) -> Result<Vec<usize>> {
        if !alpha.is_finite() || !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::AlphaRange(alpha));
        }
        Ok(self
            .membership
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= alpha)
            .map(|(i, _)| i + 1)
            .collect())
    }
}
