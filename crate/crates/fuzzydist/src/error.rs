use std::path::PathBuf;

/// Everything that can go wrong in this crate.
///
/// Variants carry enough position information (1-based rows, columns, and
/// domain indices) to point a user at the offending input without a debugger.
#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// A domain was constructed with zero elements.
    #[error("a domain must contain at least one element")]
    EmptyDomain,

    /// Domain labels must be pairwise distinct.
    #[error("duplicate domain label `{0}`")]
    DuplicateLabel(String),

    /// A membership vector does not match the size of its domain.
    #[error("membership vector has {got} values but the domain has {expected} elements")]
    MembershipLength { expected: usize, got: usize },

    /// A membership grade fell outside [0, 1] (or was NaN/infinite).
    #[error("membership value {value} at element {index} is outside [0, 1]")]
    MembershipRange { index: usize, value: f64 },

    /// Two sets from domains of different sizes were combined.
    #[error("domain size mismatch: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },

    /// `binary_entropy` was called outside its domain.
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityRange(f64),

    /// Alpha-cut levels live in the half-open interval (0, 1].
    #[error("alpha {0} is outside (0, 1]")]
    AlphaRange(f64),

    /// Minkowski distances are only metrics for order r >= 1.
    #[error("Minkowski order r = {0} must be >= 1")]
    MinkowskiOrder(f64),

    /// The fuzzy Hausdorff approximation needs at least one alpha level.
    #[error("the number of alpha levels must be >= 1")]
    ZeroLevels,

    /// The crisp Hausdorff distance is undefined for empty sets.
    #[error("crisp Hausdorff distance is undefined for an empty set")]
    EmptyCrispSet,

    /// The feature-vector distance divides by the power (scalar cardinality),
    /// so an everywhere-zero set has no feature vector.
    #[error("feature vector is undefined for a set with zero power (all memberships 0)")]
    ZeroPower,

    /// A weight vector has the wrong number of entries.
    #[error("weight vector has {got} entries but the domain has {expected} elements")]
    WeightCount { expected: usize, got: usize },

    /// Weights must be non-negative and finite.
    #[error("weight {value} at element {index} is negative or not finite")]
    WeightRange { index: usize, value: f64 },

    /// Weights must sum to 1 (within 1e-9).
    #[error("weights sum to {0}, expected 1 (within 1e-9)")]
    WeightSum(f64),

    /// A distance matrix needs at least two sets to compare.
    #[error("a distance matrix needs at least two labeled sets, got {0}")]
    TooFewSets(usize),

    /// Labeled inputs to the same matrix must have distinct names.
    #[error("duplicate set label `{0}`")]
    DuplicateSetLabel(String),

    /// A metric failed on one pair during matrix construction; the labels
    /// identify which.
    #[error("metric `{metric}` failed on pair ({left}, {right}): {source}")]
    PairDistance {
        metric: String,
        left: String,
        right: String,
        #[source]
        source: Box<Error>,
    },

    /// Hand-assembled matrix values violated a distance-matrix invariant.
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),

    /// k must satisfy 1 <= k <= number of points.
    #[error("cluster count k = {k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },

    /// Lloyd's iterations must be allowed to run at least once.
    #[error("max_iter must be >= 1")]
    ZeroMaxIter,

    /// A report was requested with the wrong number of labels.
    #[error("{labels} labels were supplied for {points} clustered points")]
    LabelCount { labels: usize, points: usize },

    /// The CSV input contained no data rows.
    #[error("dataset is empty (no data rows)")]
    EmptyDataset,

    /// Fuzzy sets were requested before any membership grades existed.
    #[error(
        "dataset has no membership grades yet; normalize it first or declare \
         its raw values as memberships"
    )]
    NotNormalized,

    /// A CSV row had the wrong number of fields. Rows are numbered from 1
    /// including the header line, matching what an editor shows.
    #[error("row {row}: expected {expected} fields, found {got}")]
    RaggedRow { row: usize, expected: usize, got: usize },

    /// A CSV cell did not parse as a number.
    #[error("row {row}, column {col}: cannot parse `{text}` as a number")]
    NumberParse { row: usize, col: usize, text: String },

    /// A CSV cell parsed but was NaN or infinite.
    #[error("row {row}, column {col}: value {value} is not finite")]
    NotFinite { row: usize, col: usize, value: f64 },

    /// Entity names (first column) must be unique.
    #[error("duplicate entity name `{0}`")]
    DuplicateEntity(String),

    /// Raw values were used as membership grades without normalizing first.
    #[error(
        "value {value} for entity `{entity}`, attribute `{attribute}` is outside [0, 1]; \
         normalize the dataset before treating its values as membership grades"
    )]
    NotMembership { entity: String, attribute: String, value: f64 },

    /// An underlying CSV-format problem (quoting, encoding, ...).
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    /// An I/O failure, annotated with the path when one is known.
    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<std::io::Error> for Error {
    fn from(source: std::io::Error) -> Self {
        Error::Io { path: PathBuf::from("<unknown>"), source }
    }
}

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
