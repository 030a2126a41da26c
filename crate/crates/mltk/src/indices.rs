//! JSON document listing partition indices.
//!
//! Indices are 1-based in the document so they can be used directly by R or
//! MATLAB code; `index_base` records this.

use mltk_core::{PartitionSet, Parts};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexPart {
    Fold { train: Vec<usize>, test: Vec<usize> },
    Part(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexDocument {
    pub dataset: String,
    pub num_instances: usize,
    pub strategy: String,
    pub scheme: String,
    pub seeds: Vec<u64>,
    pub index_base: usize,
    pub partitions: Vec<IndexPart>,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// Document for one partition set, or for the two runs of a 5x2 set.
pub fn index_document(sets: &[PartitionSet], scheme: &str) -> IndexDocument {
    let first = &sets[0];
    let mut partitions = Vec::new();
    for set in sets {
        match &set.parts {
            Parts::Ratios(parts) => partitions.extend(parts.iter().map(|p| IndexPart::Part(one_based(p)))),
            Parts::Folds(folds) => partitions.extend(folds.iter().map(|f| IndexPart::Fold {
                train: one_based(&f.train),
                test: one_based(&f.test),
            })),
        }
    }
    IndexDocument {
        dataset: first.dataset.clone(),
        num_instances: first.num_instances,
        strategy: first.spec.strategy.as_str().to_string(),
        scheme: scheme.to_string(),
        seeds: sets.iter().map(|s| s.spec.seed).collect(),
        index_base: 1,
        partitions,
    }
}
