//! Golden corpus shared by the round-trip and acceptance tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use mltk::core::{AttributeMeta, DatasetParts, Labelset, MlDataset, Value};
use mltk::export::{write_dataset, WriteOptions};
use mltk::format::same_content;
use mltk::{read, Format, ReadOptions, Schema};

pub const TOLERANCE: f64 = 1e-9;

fn build(parts: DatasetParts) -> MlDataset {
    MlDataset::new(parts).expect("valid golden dataset")
}

fn sets(rows: &[&str]) -> Vec<Labelset> {
    rows.iter()
        .map(|r| Labelset::from_bits(&r.bytes().map(|b| b == b'1').collect::<Vec<_>>()))
        .collect()
}

/// Numeric features with awkward magnitudes.
pub fn dense() -> MlDataset {
    let raw = [
        [0.1, -2.5, 1e-7, 123456.789],
        [3.0, 0.0, -0.000123, 1e12],
        [-7.25, 42.0, 0.333333333333, -9.87654321e-3],
        [1.0, 1.0, 1.0, 1.0],
        [2.75128, -3.0625, 6.02e23, 0.5],
        [0.0, 0.0, 0.0, 0.0],
    ];
    build(DatasetParts {
        name: "dense".into(),
        features: ["a", "b", "c", "d"].map(AttributeMeta::numeric).to_vec(),
        label_names: vec!["l1".into(), "l2".into(), "l3".into()],
        values: raw.iter().flatten().map(|&v| Value::Numeric(v)).collect(),
        labels: sets(&["100", "110", "011", "111", "001", "010"]),
        ..Default::default()
    })
}

/// Mostly zero cells, with labels stored before the features.
pub fn sparse() -> MlDataset {
    let (n, f) = (12, 10);
    let values = (0..n * f)
        .map(|c| {
            if c % 7 == 3 {
                Value::Numeric((c as f64) * 0.25)
            } else {
                Value::Numeric(0.0)
            }
        })
        .collect();
    build(DatasetParts {
        name: "sparse".into(),
        features: (1..=f).map(|j| AttributeMeta::numeric(format!("w{j}"))).collect(),
        label_names: vec!["t1".into(), "t2".into()],
        values,
        labels: sets(&["10", "00", "01", "00", "11", "00", "10", "00", "00", "01", "00", "10"]),
        label_positions: Some(vec![0, 1]),
        ..Default::default()
    })
}

/// Nominal features, including a category that needs quoting.
pub fn nominal() -> MlDataset {
    let color = AttributeMeta::nominal("color", ["red", "green", "dark blue"]);
    let size = AttributeMeta::nominal("size", ["S", "M", "L"]);
    let rows: [[Value; 3]; 5] = [
        [Value::Nominal(0), Value::Numeric(1.5), Value::Nominal(2)],
        [Value::Nominal(2), Value::Numeric(-1.0), Value::Nominal(0)],
        [Value::Nominal(1), Value::Numeric(0.0), Value::Nominal(1)],
        [Value::Nominal(0), Value::Numeric(10.125), Value::Nominal(0)],
        [Value::Nominal(1), Value::Numeric(2.0), Value::Nominal(2)],
    ];
    build(DatasetParts {
        name: "nominal".into(),
        features: vec![color, AttributeMeta::numeric("weight"), size],
        label_names: vec!["p".into(), "q".into(), "r".into()],
        values: rows.iter().flatten().copied().collect(),
        labels: sets(&["101", "010", "001", "110", "100"]),
        // labels interleaved with the features in the original file
        label_positions: Some(vec![1, 3, 5]),
        ..Default::default()
    })
}

pub fn missing() -> MlDataset {
    let grade = AttributeMeta::nominal("grade", ["low", "high"]);
    let rows: [[Value; 3]; 4] = [
        [Value::Numeric(1.0), Value::Missing, Value::Nominal(1)],
        [Value::Missing, Value::Numeric(2.5), Value::Missing],
        [Value::Numeric(0.0), Value::Numeric(-4.0), Value::Nominal(0)],
        [Value::Missing, Value::Missing, Value::Missing],
    ];
    build(DatasetParts {
        name: "missing".into(),
        features: vec![AttributeMeta::numeric("m1"), AttributeMeta::numeric("m2"), grade],
        label_names: vec!["y1".into(), "y2".into()],
        values: rows.iter().flatten().copied().collect(),
        labels: sets(&["10", "01", "11", "10"]),
        ..Default::default()
    })
}

/// Several instances with no active label.
pub fn empty_labelsets() -> MlDataset {
    build(DatasetParts {
        name: "empty_labelsets".into(),
        features: vec![AttributeMeta::numeric("v")],
        label_names: vec!["u1".into(), "u2".into(), "u3".into(), "u4".into()],
        values: [0.5, 1.5, 2.5, 3.5, 4.5].map(Value::Numeric).to_vec(),
        labels: sets(&["0000", "1000", "0000", "0011", "0000"]),
        ..Default::default()
    })
}

pub fn corpus() -> Vec<(MlDataset, bool)> {
    vec![
        (dense(), false),
        (sparse(), true),
        (nominal(), false),
        (missing(), false),
        (empty_labelsets(), false),
    ]
}

/// Writes `dataset` in `format` under `dir` and returns the data file.
pub fn write_as(dataset: &MlDataset, format: Format, sparse: bool, dir: &Path) -> PathBuf {
    let mut options = WriteOptions::new([format]);
    options.sparse = sparse;
    options.overwrite = true;
    let paths = write_dataset(dataset, dir, &options).expect("write");
    paths
        .into_iter()
        .find(|p| {
            p.extension().and_then(|e| e.to_str()) == Some(format.extension())
                && !p.to_string_lossy().ends_with("_labels.csv")
        })
        .expect("data file written")
}

/// Reads a file written by [`write_as`]; CSV and LibSVM use `schema` for attribute kinds.
pub fn read_back(path: &Path, format: Format, schema: &Schema) -> MlDataset {
    let options = ReadOptions {
        schema: Some(schema.clone()),
        ..Default::default()
    };
    read(path, format, &options).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

/// Writes in `a`, reads, writes in `b`, reads, and compares with the original.
pub fn round_trip(dataset: &MlDataset, sparse: bool, a: Format, b: Format, dir: &Path) -> Result<(), String> {
    let schema = Schema::of(dataset);
    let first_dir = dir.join(format!("{}-{a}-{b}-1", dataset.name()));
    let second_dir = dir.join(format!("{}-{a}-{b}-2", dataset.name()));
    let once = read_back(&write_as(dataset, a, sparse, &first_dir), a, &schema);
    same_content(dataset, &once, TOLERANCE).map_err(|e| format!("{a}: {e}"))?;
    let twice = read_back(&write_as(&once, b, sparse, &second_dir), b, &schema);
    same_content(dataset, &twice, TOLERANCE).map_err(|e| format!("{a} -> {b}: {e}"))
}
