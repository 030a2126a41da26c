use alloc::string::String;

/// A dataset failed one of the model invariants.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatasetError {
    #[error("dataset has no instances")]
    NoInstances,
    #[error("dataset has no input features")]
    NoFeatures,
    #[error("dataset needs at least 2 labels, found {0}")]
    TooFewLabels(usize),
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("attribute `{0}` is declared as a label but listed among the input features")]
    LabelAmongFeatures(String),
    #[error("feature matrix has {found} cells, expected {expected} ({rows} rows x {cols} features)")]
    FeatureShape {
        found: usize,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("labelset of instance {row} has width {found}, expected {expected}")]
    LabelWidth { row: usize, found: usize, expected: usize },
    #[error("instance {row}, attribute `{attribute}`: category index {index} out of range ({categories} categories)")]
    NominalOutOfRange {
        row: usize,
        attribute: String,
        index: u32,
        categories: usize,
    },
    #[error("instance {row}, attribute `{attribute}`: nominal value in a numeric attribute")]
    KindMismatch { row: usize, attribute: String },
    #[error("label positions are not a valid placement of {labels} labels among {columns} columns")]
    InvalidLabelPositions { labels: usize, columns: usize },
    #[error("instance index {index} out of range for {n} instances")]
    IndexOutOfRange { index: usize, n: usize },
}

/// Invalid input to the evaluation metrics.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("prediction set has no instances")]
    NoInstances,
    #[error("prediction set has no labels")]
    NoLabels,
    #[error("neither bipartitions nor scores were supplied")]
    NothingToEvaluate,
    #[error("{what} has shape {found}, expected {expected}")]
    Shape {
        what: &'static str,
        found: String,
        expected: String,
    },
    #[error("score at instance {row}, label {label} is not finite")]
    NonFiniteScore { row: usize, label: usize },
    #[error("this metric needs predicted bipartitions")]
    MissingBipartition,
    #[error("this metric needs label scores")]
    MissingScores,
}

/// Invalid partitioning request.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PartitionError {
    #[error("partition ratios must be positive and sum to 100 (got sum {sum})")]
    BadRatios { sum: f64 },
    #[error("hold-out training percentage must lie strictly between 0 and 100 (got {0})")]
    BadHoldout(f64),
    #[error("number of folds must be at least 2 (got {0})")]
    BadFolds(usize),
    #[error("cannot split {n} instances into {parts} parts")]
    TooFewInstances { n: usize, parts: usize },
    #[error("part {part} would be empty with {n} instances")]
    EmptyPart { part: usize, n: usize },
    #[error("the two seeds of a 2x5 run must differ (both are {0})")]
    IdenticalSeeds(u64),
    #[error("partition set was built for {expected} instances, dataset has {found}")]
    DatasetMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}
