//! Reproducible dataset partitioning.
//!
//! Three strategies (random, labelset-stratified, iterative stratification)
//! combine with three schemes (arbitrary ratios, hold-out, k folds). Every run
//! is a pure function of the dataset and the [`PartitionSpec`]: the seed
//! drives a [`SplitMix64`] generator whose draw order is fixed by the
//! algorithms below, so repeated runs yield identical index lists.
//!
//! Part sizes come from the largest-remainder method over `n * ratio`, which
//! makes them sum to `n`; every strategy fills each part to exactly its
//! target size, so k-fold test sets differ in size by at most one.
//!
//! Indices are 0-based and each index list is sorted ascending.

mod sizes;
mod strategy;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dataset::MlDataset;
use crate::error::PartitionError;
use crate::rng::SplitMix64;

pub use sizes::target_sizes;

pub const DEFAULT_SEED: u64 = 10;
pub const DEFAULT_HOLDOUT: f64 = 60.0;
pub const DEFAULT_FOLDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum Strategy {
    Random,
    Stratified,
    Iterative,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Random, Strategy::Stratified, Strategy::Iterative];

    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::Stratified => "stratified",
            Strategy::Iterative => "iterative",
        }
    }

    /// Abbreviation used in exported file names.
    pub fn short_name(&self) -> &'static str {
        match self {
            Strategy::Random => "rand",
            Strategy::Stratified => "strat",
            Strategy::Iterative => "iter",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "random" | "rand" => Ok(Strategy::Random),
            "stratified" | "strat" => Ok(Strategy::Stratified),
            "iterative" | "iter" => Ok(Strategy::Iterative),
            other => Err(alloc::format!(
                "unknown strategy `{other}` (expected random, stratified or iterative)"
            )),
        }
    }
}

/// How many parts to build and how large they are.
#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    /// Percentages of instances per part; must sum to 100.
    Ratios(Vec<f64>),
    /// Training percentage of a single train/test split.
    Holdout(f64),
    /// Number of cross-validation folds.
    KFolds(usize),
}

impl Scheme {
    pub fn num_parts(&self) -> usize {
        match self {
            Scheme::Ratios(r) => r.len(),
            Scheme::Holdout(_) => 2,
            Scheme::KFolds(k) => *k,
        }
    }

    pub fn validate(&self) -> Result<(), PartitionError> {
        sizes::weights(self).map(drop)
    }
}

impl Default for Scheme {
    fn default() -> Self {
        Scheme::KFolds(DEFAULT_FOLDS)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Ratios(r) => {
                f.write_str("ratios:")?;
                for (i, v) in r.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Scheme::Holdout(p) => write!(f, "holdout:{p}"),
            Scheme::KFolds(k) => write!(f, "kfolds:{k}"),
        }
    }
}

impl FromStr for Scheme {
    type Err = String;

    /// Accepts `holdout[:p]`, `kfolds[:k]` and `ratios:r1,r2,...`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = match s.split_once(':') {
            Some((kind, arg)) => (kind, Some(arg.trim())),
            None => (s, None),
        };
        let number = |arg: &str| -> Result<f64, String> {
            arg.parse::<f64>()
                .map_err(|_| alloc::format!("`{arg}` is not a number"))
        };
        match (kind.trim().to_ascii_lowercase().as_str(), arg) {
            ("holdout", None) => Ok(Scheme::Holdout(DEFAULT_HOLDOUT)),
            ("holdout", Some(p)) => Ok(Scheme::Holdout(number(p)?)),
            ("kfolds", None) => Ok(Scheme::KFolds(DEFAULT_FOLDS)),
            ("kfolds", Some(k)) => k
                .parse()
                .map(Scheme::KFolds)
                .map_err(|_| alloc::format!("`{k}` is not a fold count")),
            ("ratios", Some(list)) => list
                .split(',')
                .map(|r| number(r.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map(Scheme::Ratios),
            _ => Err(alloc::format!(
                "unknown scheme `{s}` (expected holdout[:p], kfolds[:k] or ratios:r1,r2,...)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSpec {
    pub strategy: Strategy,
    pub scheme: Scheme,
    pub seed: u64,
    /// Build sub-datasets rather than returning bare index lists.
    pub materialize: bool,
}

impl PartitionSpec {
    pub fn new(strategy: Strategy, scheme: Scheme) -> Self {
        PartitionSpec {
            strategy,
            scheme,
            seed: DEFAULT_SEED,
            materialize: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// One cross-validation fold (or the single hold-out split).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parts {
    /// Disjoint parts covering every instance.
    Ratios(Vec<Vec<usize>>),
    /// Train/test pairs; one pair for hold-out, `k` for k folds.
    Folds(Vec<Fold>),
}

impl Parts {
    pub fn len(&self) -> usize {
        match self {
            Parts::Ratios(p) => p.len(),
            Parts::Folds(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSet {
    /// Name of the partitioned dataset.
    pub dataset: String,
    pub num_instances: usize,
    pub spec: PartitionSpec,
    pub parts: Parts,
}

impl PartitionSet {
    /// The groups whose label distribution matters: ratio parts, the hold-out
    /// train and test sets, or the k test folds.
    pub fn groups(&self) -> Vec<&[usize]> {
        match (&self.parts, &self.spec.scheme) {
            (Parts::Ratios(parts), _) => parts.iter().map(Vec::as_slice).collect(),
            (Parts::Folds(folds), Scheme::Holdout(_)) => folds
                .iter()
                .flat_map(|f| [f.train.as_slice(), f.test.as_slice()])
                .collect(),
            (Parts::Folds(folds), _) => folds.iter().map(|f| f.test.as_slice()).collect(),
        }
    }
}

pub fn partition(dataset: &MlDataset, spec: &PartitionSpec) -> Result<PartitionSet, PartitionError> {
    let n = dataset.num_instances();
    let weights = sizes::weights(&spec.scheme)?;
    if n < weights.len() {
        return Err(PartitionError::TooFewInstances {
            n,
            parts: weights.len(),
        });
    }
    let targets = target_sizes(n, &weights);
    if let Some(part) = targets.iter().position(|&t| t == 0) {
        return Err(PartitionError::EmptyPart { part, n });
    }

    let mut rng = SplitMix64::new(spec.seed);
    let mut groups = match spec.strategy {
        Strategy::Random => strategy::random(n, &targets, &mut rng),
        Strategy::Stratified => strategy::stratified(dataset, &weights, &targets, &mut rng),
        Strategy::Iterative => strategy::iterative(dataset, &weights, &targets, &mut rng),
    };
    for g in &mut groups {
        g.sort_unstable();
    }

    let parts = match spec.scheme {
        Scheme::Ratios(_) => Parts::Ratios(groups),
        Scheme::Holdout(_) => {
            let test = groups.pop().unwrap_or_default();
            let train = groups.pop().unwrap_or_default();
            Parts::Folds(alloc::vec![Fold { train, test }])
        }
        Scheme::KFolds(_) => {
            let mut fold_of = alloc::vec![0usize; n];
            for (f, g) in groups.iter().enumerate() {
                for &i in g {
                    fold_of[i] = f;
                }
            }
            let folds = groups
                .into_iter()
                .enumerate()
                .map(|(f, test)| Fold {
                    train: (0..n).filter(|&i| fold_of[i] != f).collect(),
                    test,
                })
                .collect();
            Parts::Folds(folds)
        }
    };

    Ok(PartitionSet {
        dataset: dataset.name().to_string(),
        num_instances: n,
        spec: spec.clone(),
        parts,
    })
}

/// Two independent 5-fold runs under different seeds.
pub fn partition_2x5(
    dataset: &MlDataset,
    strategy: Strategy,
    seeds: (u64, u64),
) -> Result<[PartitionSet; 2], PartitionError> {
    if seeds.0 == seeds.1 {
        return Err(PartitionError::IdenticalSeeds(seeds.0));
    }
    let run = |seed| {
        partition(
            dataset,
            &PartitionSpec::new(strategy, Scheme::KFolds(5)).with_seed(seed),
        )
    };
    Ok([run(seeds.0)?, run(seeds.1)?])
}

/// Sub-datasets built from a partition set.
#[derive(Debug, Clone, PartialEq)]
pub enum Materialized {
    Parts(Vec<MlDataset>),
    /// `(train, test)` pairs.
    Folds(Vec<(MlDataset, MlDataset)>),
}

pub fn materialize(dataset: &MlDataset, set: &PartitionSet) -> Result<Materialized, PartitionError> {
    if set.num_instances != dataset.num_instances() {
        return Err(PartitionError::DatasetMismatch {
            expected: set.num_instances,
            found: dataset.num_instances(),
        });
    }
    Ok(match &set.parts {
        Parts::Ratios(parts) => Materialized::Parts(parts.iter().map(|p| dataset.select(p)).collect::<Result<_, _>>()?),
        Parts::Folds(folds) => Materialized::Folds(
            folds
                .iter()
                .map(|f| Ok((dataset.select(&f.train)?, dataset.select(&f.test)?)))
                .collect::<Result<_, PartitionError>>()?,
        ),
    })
}

/// Mean absolute difference between each group's label proportions and the
/// whole dataset's, over all labels and groups. Lower is better stratified.
pub fn label_proportion_deviation(dataset: &MlDataset, groups: &[&[usize]]) -> f64 {
    let k = dataset.num_labels();
    let n = dataset.num_instances() as f64;
    let global = crate::stats::label_counts(dataset);
    let mut total = 0.0;
    let mut terms = 0usize;
    for group in groups {
        if group.is_empty() {
            continue;
        }
        let mut counts = alloc::vec![0usize; k];
        for &i in group.iter() {
            for j in dataset.labelset(i).iter() {
                counts[j] += 1;
            }
        }
        for j in 0..k {
            let observed = counts[j] as f64 / group.len() as f64;
            total += libm::fabs(observed - global[j] as f64 / n);
            terms += 1;
        }
    }
    if terms == 0 {
        0.0
    } else {
        total / terms as f64
    }
}
