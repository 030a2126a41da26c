//! Labelset frequencies and per-label statistics.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::MlDataset;
use crate::labelset::Labelset;
use crate::math::mean_and_cv;
use crate::measures::scumble_per_instance;

/// Occurrence count of every distinct labelset, keyed in canonical bit-string order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelsetTable {
    counts: BTreeMap<Labelset, usize>,
}

impl LabelsetTable {
    /// Number of distinct labelsets (`ls`).
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, labelset: &Labelset) -> usize {
        self.counts.get(labelset).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Labelset, usize> {
        self.counts.iter()
    }

    /// Labelsets occurring exactly once.
    pub fn num_single(&self) -> usize {
        self.counts.values().filter(|&&c| c == 1).count()
    }

    /// Occurrences of the most common labelset.
    pub fn max_frequency(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Sum of all counts; equals the number of instances.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

impl<'a> IntoIterator for &'a LabelsetTable {
    type Item = (&'a Labelset, &'a usize);
    type IntoIter = btree_map::Iter<'a, Labelset, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

pub fn labelsets(dataset: &MlDataset) -> LabelsetTable {
    let mut counts = BTreeMap::new();
    for labelset in dataset.labels() {
        *counts.entry(labelset.clone()).or_insert(0) += 1;
    }
    LabelsetTable { counts }
}

/// Per-label summary row.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LabelStats {
    pub name: String,
    pub count: usize,
    pub frequency: f64,
    /// `None` when the label never occurs.
    pub irlbl: Option<f64>,
    /// Mean instance-level SCUMBLE over the instances where this label is active.
    pub scumble: f64,
    pub scumble_cv: f64,
}

/// Number of instances in which each label is active.
pub fn label_counts(dataset: &MlDataset) -> Vec<usize> {
    let mut counts = vec![0; dataset.num_labels()];
    for labelset in dataset.labels() {
        for j in labelset.iter() {
            counts[j] += 1;
        }
    }
    counts
}

/// Imbalance ratio per label: the largest label count divided by this label's count.
pub fn irlbl_from_counts(counts: &[usize]) -> Vec<Option<f64>> {
    let max = counts.iter().copied().max().unwrap_or(0);
    counts.iter().map(|&c| (c > 0).then(|| max as f64 / c as f64)).collect()
}

pub fn label_stats(dataset: &MlDataset) -> Vec<LabelStats> {
    let counts = label_counts(dataset);
    let irlbl = irlbl_from_counts(&counts);
    let per_instance = scumble_per_instance(dataset, &irlbl);
    let n = dataset.num_instances() as f64;

    let mut by_label: Vec<Vec<f64>> = counts.iter().map(|&c| Vec::with_capacity(c)).collect();
    for (labelset, &s) in dataset.labels().iter().zip(&per_instance) {
        for j in labelset.iter() {
            by_label[j].push(s);
        }
    }

    dataset
        .label_names()
        .zip(counts.iter().zip(irlbl).zip(by_label))
        .map(|(name, ((&count, irlbl), values))| {
            let (scumble, scumble_cv) = mean_and_cv(&values);
            LabelStats {
                name: name.into(),
                count,
                frequency: count as f64 / n,
                irlbl,
                scumble,
                scumble_cv,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::tests::from_bit_rows;

    #[test]
    fn labelsets_count_by_hand() {
        let t = labelsets(&from_bit_rows(&["10", "11", "10"]));
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(&Labelset::parse_bits("10").unwrap()), 2);
        assert_eq!(t.get(&Labelset::parse_bits("11").unwrap()), 1);
        assert_eq!(t.get(&Labelset::parse_bits("01").unwrap()), 0);
        assert_eq!(t.total(), 3);
    }

    #[test]
    fn identical_rows_single_labelset() {
        let t = labelsets(&from_bit_rows(&["11"; 4]));
        assert_eq!(t.len(), 1);
        assert_eq!(t.max_frequency(), 4);
        assert_eq!(t.num_single(), 0);
    }

    #[test]
    fn distinct_rows_all_singletons() {
        let t = labelsets(&from_bit_rows(&["00", "01", "10", "11"]));
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|(_, &c)| c == 1));
        assert_eq!(t.num_single(), 4);
        let keys: Vec<String> = t.iter().map(|(k, _)| k.to_bit_string()).collect();
        assert_eq!(keys, ["00", "01", "10", "11"]);
    }

    #[test]
    fn irlbl_balanced() {
        let s = label_stats(&from_bit_rows(&["11", "10", "01", "01", "10"]));
        assert_eq!(s[0].count, 3);
        assert_eq!(s[1].count, 3);
        assert_eq!(s[0].irlbl, Some(1.0));
        assert_eq!(s[1].irlbl, Some(1.0));
    }

    #[test]
    fn irlbl_by_hand() {
        // l1 active 4 times, l2 twice: max 4 / own count
        let s = label_stats(&from_bit_rows(&["10", "11", "11", "10"]));
        assert_eq!(s[0].irlbl, Some(1.0));
        assert_eq!(s[1].irlbl, Some(2.0));
        assert_eq!(s[1].frequency, 0.5);
    }

    #[test]
    fn zero_count_label_is_undefined() {
        let s = label_stats(&from_bit_rows(&["10"; 4]));
        assert_eq!(s[1].count, 0);
        assert_eq!(s[1].irlbl, None);
        assert_eq!(s[1].scumble, 0.0);
        assert_eq!(s[1].scumble_cv, 0.0);
    }

    #[test]
    fn per_label_scumble_is_mean_over_active_instances() {
        // counts: l1=3, l2=1, l3=1 -> IRLbl 1, 3, 3
        // row "110": IRLbl {1,3} -> 1 - sqrt(3)/2; row "100": 0; row "101": 1 - sqrt(3)/2
        let s = label_stats(&from_bit_rows(&["110", "100", "101"]));
        let c = 1.0 - libm::sqrt(3.0) / 2.0;
        assert!((s[0].scumble - 2.0 * c / 3.0).abs() < 1e-15);
        assert!((s[1].scumble - c).abs() < 1e-15);
        assert_eq!(s[1].scumble_cv, 0.0);
        // l1 values {c, 0, c}: mean 2c/3, population sd c*sqrt(2)/3
        assert!((s[0].scumble_cv - libm::sqrt(2.0) / 2.0).abs() < 1e-12);
    }
}
