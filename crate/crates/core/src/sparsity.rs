//! Fraction of zero cells in a dataset.

use crate::dataset::MlDataset;
use crate::measures::scumble;

/// Share of zero-valued cells.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SparsityReport {
    /// Zero cells over the `n x (f + k)` feature and label cells.
    pub ratio: f64,
    /// Same count extended with two per-instance summary columns (number of
    /// active labels and instance SCUMBLE), over `n x (f + k + 2)` cells.
    /// This is the figure reported by the R `mldr.datasets` tooling, whose
    /// data frames carry those two columns.
    pub ratio_with_summary_columns: f64,
}

/// Nominal cells count as zero when they hold the first category; missing cells never do.
pub fn sparsity(dataset: &MlDataset) -> SparsityReport {
    let n = dataset.num_instances();
    let feature_zeros = dataset.values().iter().filter(|v| v.is_zero()).count();
    let label_zeros: usize = dataset.labels().iter().map(|l| dataset.num_labels() - l.len()).sum();
    let zeros = feature_zeros + label_zeros;
    let cells = n * dataset.num_attributes();

    let empty_labelsets = dataset.labels().iter().filter(|l| l.is_empty()).count();
    let zero_scumble = scumble(dataset)
        .per_instance
        .values
        .iter()
        .filter(|&&v| v == 0.0)
        .count();
    let extended_zeros = zeros + empty_labelsets + zero_scumble;

    SparsityReport {
        ratio: zeros as f64 / cells as f64,
        ratio_with_summary_columns: extended_zeros as f64 / (cells + 2 * n) as f64,
    }
}
