//! Core algorithms for multi-label datasets.
//!
//! This crate holds everything that does not touch the filesystem: the
//! in-memory dataset model, labelset bookkeeping, the characterization
//! measures (cardinality, density, imbalance ratios, SCUMBLE, TCS), the
//! evaluation metrics for multi-label predictions and the seeded
//! partitioning strategies. It is `no_std` and only needs `alloc`.
//!
//! Readers, writers and the command line tool live in the `mltk` crate.
//!
//! ## Cargo Features
//!
//! * `serde`: derive `Serialize`/`Deserialize` for the report types
//!   (measures, label statistics, evaluation reports, partition specs).
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod dataset;
pub mod error;
pub mod eval;
pub mod labelset;
pub mod measures;
pub mod partition;
pub mod rng;
pub mod sparsity;
pub mod stats;

mod math;

pub use dataset::{AttributeKind, AttributeMeta, Column, DatasetParts, MlDataset, Value};
pub use error::{DatasetError, EvalError, PartitionError};
pub use eval::{evaluate, ConfusionCounts, EvaluationReport, PredictionSet};
pub use labelset::Labelset;
pub use measures::{measure_bundle, MeasureBundle, Scumble, ScumblePerInstance};
pub use partition::{
    materialize, partition, partition_2x5, Fold, Materialized, PartitionSet, PartitionSpec, Parts, Scheme, Strategy,
};
pub use rng::SplitMix64;
pub use sparsity::{sparsity, SparsityReport};
pub use stats::{label_stats, labelsets, LabelStats, LabelsetTable};
