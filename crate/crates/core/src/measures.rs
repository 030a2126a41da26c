//! Dataset characterization: the thirteen summary measures and the
//! instance-level SCUMBLE decomposition.

use alloc::vec::Vec;

use crate::dataset::MlDataset;
use crate::math::mean_and_cv;
use crate::stats::{irlbl_from_counts, label_counts, labelsets};

/// The thirteen dataset-level measures.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasureBundle {
    pub num_attributes: usize,
    pub num_inputs: usize,
    pub num_labels: usize,
    pub num_instances: usize,
    pub num_labelsets: usize,
    pub num_single_labelsets: usize,
    pub max_frequency: usize,
    pub cardinality: f64,
    pub density: f64,
    /// Mean of the defined per-label imbalance ratios; labels that never occur are skipped.
    pub mean_ir: Option<f64>,
    pub scumble: f64,
    pub scumble_cv: f64,
    pub tcs: f64,
}

/// SCUMBLE value of every instance, in instance order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScumblePerInstance {
    pub values: Vec<f64>,
}

/// Dataset SCUMBLE, its coefficient of variation and the per-instance values.
#[derive(Debug, Clone, PartialEq)]
pub struct Scumble {
    pub mean: f64,
    pub cv: f64,
    pub per_instance: ScumblePerInstance,
}

/// Mean number of active labels per instance.
pub fn cardinality(dataset: &MlDataset) -> f64 {
    let total: usize = dataset.labels().iter().map(|l| l.len()).sum();
    total as f64 / dataset.num_instances() as f64
}

pub fn density(dataset: &MlDataset) -> f64 {
    cardinality(dataset) / dataset.num_labels() as f64
}

pub fn mean_ir(dataset: &MlDataset) -> Option<f64> {
    let defined: Vec<f64> = irlbl_from_counts(&label_counts(dataset))
        .into_iter()
        .flatten()
        .collect();
    if defined.is_empty() {
        None
    } else {
        Some(defined.iter().sum::<f64>() / defined.len() as f64)
    }
}

/// Instance SCUMBLE values given per-label imbalance ratios.
///
/// The geometric and arithmetic means run over the labels active in the
/// instance. Instances with no active label, or whose active labels share a
/// single imbalance ratio, score exactly 0.
pub(crate) fn scumble_per_instance(dataset: &MlDataset, irlbl: &[Option<f64>]) -> Vec<f64> {
    let mut active = Vec::new();
    dataset
        .labels()
        .iter()
        .map(|labelset| {
            active.clear();
            active.extend(labelset.iter().filter_map(|j| irlbl[j]));
            if active.is_empty() || active.iter().all(|&v| v == active[0]) {
                return 0.0;
            }
            let m = active.len() as f64;
            let mean = active.iter().sum::<f64>() / m;
            let geometric = libm::exp(active.iter().map(|&v| libm::log(v)).sum::<f64>() / m);
            (1.0 - geometric / mean).clamp(0.0, 1.0)
        })
        .collect()
}

pub fn scumble(dataset: &MlDataset) -> Scumble {
    let irlbl = irlbl_from_counts(&label_counts(dataset));
    let values = scumble_per_instance(dataset, &irlbl);
    let (mean, cv) = mean_and_cv(&values);
    Scumble {
        mean,
        cv,
        per_instance: ScumblePerInstance { values },
    }
}

/// Theoretical complexity score from its three ingredients: `ln(f * k * ls)`.
pub fn tcs_from_counts(num_inputs: usize, num_labels: usize, num_labelsets: usize) -> f64 {
    libm::log(num_inputs as f64 * num_labels as f64 * num_labelsets as f64)
}

/// Natural logarithm of features x labels x distinct labelsets.
pub fn tcs(dataset: &MlDataset) -> f64 {
    tcs_from_counts(dataset.num_features(), dataset.num_labels(), labelsets(dataset).len())
}

pub fn measure_bundle(dataset: &MlDataset) -> MeasureBundle {
    let table = labelsets(dataset);
    let scumble = scumble(dataset);
    let cardinality = cardinality(dataset);
    MeasureBundle {
        num_attributes: dataset.num_attributes(),
        num_inputs: dataset.num_features(),
        num_labels: dataset.num_labels(),
        num_instances: dataset.num_instances(),
        num_labelsets: table.len(),
        num_single_labelsets: table.num_single(),
        max_frequency: table.max_frequency(),
        cardinality,
        density: cardinality / dataset.num_labels() as f64,
        mean_ir: mean_ir(dataset),
        scumble: scumble.mean,
        scumble_cv: scumble.cv,
        tcs: tcs_from_counts(dataset.num_features(), dataset.num_labels(), table.len()),
    }
}
