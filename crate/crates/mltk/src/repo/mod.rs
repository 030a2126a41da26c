//! Static dataset repository: metadata JSON, pre-built partition archives,
//! full dataset downloads and a client-side catalog.
//!
//! Layout of the output directory:
//!
//! ```text
//! index.html
//! assets/...
//! json/index.json
//! json/<name>.json
//! full/<name>.arff
//! partitions/<name>/<name>-<strategy>-<scheme>-<format>.tar.gz
//! ```

mod archive;
mod serve;
mod site;

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use mltk_core::partition::DEFAULT_SEED;
use mltk_core::{
    label_stats, measure_bundle, partition, partition_2x5, sparsity, AttributeMeta, LabelStats, MeasureBundle,
    MlDataset, PartitionSet, PartitionSpec, Scheme, SparsityReport, Strategy,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::{partition_files, WriteOptions};
use crate::format::{self, Format, ReadOptions, LABEL_NAMES_SUFFIX};

pub use archive::tar_gz;
pub use serve::serve;
pub use site::{write_site, Assets};

/// Training percentage of the hold-out split.
pub const HOLDOUT_PERCENT: f64 = 60.0;
/// Seeds of the two 5-fold runs.
pub const REPEATED_SEEDS: (u64, u64) = (DEFAULT_SEED, DEFAULT_SEED + 1);
/// Datasets are published in MEKA format, which needs no companion file.
pub const FULL_FORMAT: Format = Format::Meka;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RepoConfig {
    pub title: String,
    pub accent_color: String,
    pub partition: bool,
    pub formats: Vec<Format>,
}

impl Default for RepoConfig {
    fn default() -> Self {
        RepoConfig {
            title: "Multi-label datasets".to_string(),
            accent_color: "#1f6f8b".to_string(),
            partition: true,
            formats: Format::ALL.to_vec(),
        }
    }
}

impl RepoConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RepoScheme {
    #[serde(rename = "holdout")]
    Holdout,
    #[serde(rename = "2x5fcv")]
    TwoByFive,
    #[serde(rename = "10cv")]
    TenFold,
}

impl RepoScheme {
    pub const ALL: [RepoScheme; 3] = [RepoScheme::Holdout, RepoScheme::TwoByFive, RepoScheme::TenFold];

    pub fn as_str(&self) -> &'static str {
        match self {
            RepoScheme::Holdout => "holdout",
            RepoScheme::TwoByFive => "2x5fcv",
            RepoScheme::TenFold => "10cv",
        }
    }

    pub fn partition(&self, dataset: &MlDataset, strategy: Strategy) -> Result<Vec<PartitionSet>> {
        Ok(match self {
            RepoScheme::Holdout => vec![partition(
                dataset,
                &PartitionSpec::new(strategy, Scheme::Holdout(HOLDOUT_PERCENT)),
            )?],
            RepoScheme::TwoByFive => partition_2x5(dataset, strategy, REPEATED_SEEDS)?.to_vec(),
            RepoScheme::TenFold => vec![partition(dataset, &PartitionSpec::new(strategy, Scheme::KFolds(10)))?],
        })
    }
}

impl fmt::Display for RepoScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConfig {
    pub strategy: Strategy,
    pub scheme: RepoScheme,
    pub format: Format,
}

impl PartitionConfig {
    pub fn archive_name(&self, dataset: &str) -> String {
        format!("{dataset}-{}-{}-{}.tar.gz", self.strategy, self.scheme, self.format)
    }
}

/// Every strategy, scheme and format combination: 45 with all five formats.
pub fn partition_configs(formats: &[Format]) -> Vec<PartitionConfig> {
    let mut configs = Vec::new();
    for strategy in Strategy::ALL {
        for scheme in RepoScheme::ALL {
            for &format in formats {
                configs.push(PartitionConfig {
                    strategy,
                    scheme,
                    format,
                });
            }
        }
    }
    configs
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Download {
    /// Absent for the full dataset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<RepoScheme>,
    pub format: Format,
    /// Relative to the site root.
    pub path: String,
}

impl Download {
    pub fn partition(&self) -> Option<PartitionConfig> {
        Some(PartitionConfig {
            strategy: self.strategy?,
            scheme: self.scheme?,
            format: self.format,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub holdout: u64,
    pub kfolds: u64,
    pub repeated: [u64; 2],
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds {
            holdout: DEFAULT_SEED,
            kfolds: DEFAULT_SEED,
            repeated: [REPEATED_SEEDS.0, REPEATED_SEEDS.1],
        }
    }
}

/// Everything published about one dataset; also the `info --json` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub name: String,
    pub measures: MeasureBundle,
    pub labels: Vec<LabelStats>,
    /// In file column order.
    pub attributes: Vec<AttributeMeta>,
    pub sparsity: SparsityReport,
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full: Option<Download>,
    pub downloads: Vec<Download>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Seeds>,
}

impl DatasetRecord {
    pub fn describe(dataset: &MlDataset) -> Self {
        let attributes = dataset
            .original_columns()
            .into_iter()
            .map(|c| match c {
                mltk_core::Column::Feature(j) => dataset.feature_attributes()[j].clone(),
                mltk_core::Column::Label(j) => dataset.label_attributes()[j].clone(),
            })
            .collect();
        DatasetRecord {
            name: dataset.name().to_string(),
            measures: measure_bundle(dataset),
            labels: label_stats(dataset),
            attributes,
            sparsity: sparsity(dataset),
            citation: dataset.citation().map(String::from),
            full: None,
            downloads: Vec::new(),
            seeds: None,
        }
    }
}

/// One row of the catalog table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexRow {
    pub name: String,
    pub instances: usize,
    pub inputs: usize,
    pub labels: usize,
    pub labelsets: usize,
    pub cardinality: f64,
    pub density: f64,
    pub mean_ir: Option<f64>,
    pub scumble: f64,
    pub tcs: f64,
    pub sparsity: f64,
    pub json: String,
}

impl IndexRow {
    fn of(record: &DatasetRecord) -> Self {
        let m = &record.measures;
        IndexRow {
            name: record.name.clone(),
            instances: m.num_instances,
            inputs: m.num_inputs,
            labels: m.num_labels,
            labelsets: m.num_labelsets,
            cardinality: m.cardinality,
            density: m.density,
            mean_ir: m.mean_ir,
            scumble: m.scumble,
            tcs: m.tcs,
            sparsity: record.sparsity.ratio,
            json: format!("json/{}.json", record.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepoIndex {
    pub title: String,
    pub accent_color: String,
    /// Modification time of the newest input file, so rebuilding unchanged
    /// input gives identical output.
    pub generated_at: String,
    pub datasets: Vec<IndexRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepoManifest {
    pub index: RepoIndex,
    /// Sorted by name.
    pub records: Vec<DatasetRecord>,
}

#[derive(Debug)]
pub struct ScannedDataset {
    pub dataset: MlDataset,
    pub source: PathBuf,
    pub format: Format,
    pub modified: Option<SystemTime>,
}

#[derive(Debug, Default)]
pub struct ScanReport {
    pub datasets: Vec<ScannedDataset>,
    /// Recognized files that could not be loaded, with the reason.
    pub failures: Vec<(PathBuf, String)>,
    /// Files that are neither datasets nor companion files.
    pub skipped: Vec<PathBuf>,
}

fn is_companion(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    lower.ends_with(".xml") || lower.ends_with(".bib") || lower.ends_with(LABEL_NAMES_SUFFIX)
}

fn is_dataset_file(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    [".arff", ".dat", ".csv", ".svm", ".libsvm"]
        .iter()
        .any(|e| lower.ends_with(e))
}

/// Loads every dataset file in `dir` (not recursive). Files that fail to load
/// are reported and skipped; two datasets with the same name are rejected.
pub fn scan(dir: &Path) -> Result<ScanReport> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    entries.sort();

    let mut report = ScanReport::default();
    let mut candidates = Vec::new();
    for path in entries {
        let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        if is_companion(&name) {
            continue;
        }
        if is_dataset_file(&name) {
            candidates.push(path);
        } else {
            report.skipped.push(path);
        }
    }

    let loaded: Vec<(PathBuf, Result<ScannedDataset>)> = candidates
        .into_par_iter()
        .map(|path| {
            let result =
                format::read_any(&path, None, &ReadOptions::default()).map(|(dataset, format)| ScannedDataset {
                    dataset,
                    modified: fs::metadata(&path).and_then(|m| m.modified()).ok(),
                    source: path.clone(),
                    format,
                });
            (path, result)
        })
        .collect();

    let mut names = BTreeSet::new();
    for (path, result) in loaded {
        match result {
            Ok(scanned) if !names.insert(scanned.dataset.name().to_string()) => {
                let msg = format!("duplicate dataset name `{}`", scanned.dataset.name());
                report.failures.push((path, msg));
            }
            Ok(scanned) => report.datasets.push(scanned),
            Err(e) => report.failures.push((path, e.to_string())),
        }
    }
    if report.datasets.is_empty() {
        log::warn!("no datasets found in {}", dir.display());
    }
    Ok(report)
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Writes one archive per partition configuration under
/// `out_dir/partitions/<name>/` and returns the download entries, in
/// configuration order. Sparse ARFF bodies are used for datasets whose cells
/// are mostly zero.
pub fn build_partitions(dataset: &MlDataset, out_dir: &Path, formats: &[Format]) -> Result<Vec<Download>> {
    let name = dataset.name();
    let sparse = sparsity(dataset).ratio > 0.5;
    let mut downloads = Vec::new();
    for strategy in Strategy::ALL {
        for scheme in RepoScheme::ALL {
            let sets = scheme.partition(dataset, strategy)?;
            for &format in formats {
                let config = PartitionConfig {
                    strategy,
                    scheme,
                    format,
                };
                let options = WriteOptions {
                    formats: vec![format],
                    sparse: sparse && format.supports_sparse_choice(),
                    basename: Some(name.to_string()),
                    overwrite: true,
                };
                let files = partition_files(dataset, &sets, &options)?;
                let bytes = tar_gz(&files).map_err(|e| Error::io(out_dir, e))?;
                let rel = format!("partitions/{name}/{}", config.archive_name(name));
                write_bytes(&out_dir.join(&rel), &bytes)?;
                downloads.push(Download {
                    strategy: Some(strategy),
                    scheme: Some(scheme),
                    format,
                    path: rel,
                });
            }
        }
    }
    Ok(downloads)
}

/// Writes `full/<name>.arff` and returns its download entry.
pub fn build_full(dataset: &MlDataset, out_dir: &Path) -> Result<Download> {
    let rel = format!("full/{}.{}", dataset.name(), FULL_FORMAT.extension());
    let sparse = sparsity(dataset).ratio > 0.5;
    write_bytes(
        &out_dir.join(&rel),
        format::render(dataset, FULL_FORMAT, sparse).as_bytes(),
    )?;
    Ok(Download {
        strategy: None,
        scheme: None,
        format: FULL_FORMAT,
        path: rel,
    })
}

fn timestamp(time: Option<SystemTime>) -> String {
    let time: chrono::DateTime<chrono::Utc> = time.unwrap_or(SystemTime::UNIX_EPOCH).into();
    time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Writes `json/<name>.json` for every record and `json/index.json`.
pub fn build_metadata(
    mut records: Vec<DatasetRecord>,
    config: &RepoConfig,
    generated_at: String,
    out_dir: &Path,
) -> Result<RepoManifest> {
    records.sort_by(|a, b| a.name.cmp(&b.name));
    for record in &records {
        let json = serde_json::to_string_pretty(record)?;
        write_bytes(&out_dir.join(format!("json/{}.json", record.name)), json.as_bytes())?;
    }
    let index = RepoIndex {
        title: config.title.clone(),
        accent_color: config.accent_color.clone(),
        generated_at,
        datasets: records.iter().map(IndexRow::of).collect(),
    };
    write_bytes(
        &out_dir.join("json/index.json"),
        serde_json::to_string_pretty(&index)?.as_bytes(),
    )?;
    Ok(RepoManifest { index, records })
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub config: RepoConfig,
    /// Worker threads; `None` uses one per core.
    pub jobs: Option<usize>,
    /// Write `index.html` and `assets/`.
    pub site: bool,
    pub assets: Assets,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            config: RepoConfig::default(),
            jobs: None,
            site: true,
            assets: Assets::Embedded,
        }
    }
}

#[derive(Debug)]
pub struct BuildSummary {
    pub manifest: RepoManifest,
    /// Input files or datasets that could not be published, with the reason.
    pub failures: Vec<(PathBuf, String)>,
    pub skipped: Vec<PathBuf>,
}

fn publish(scanned: &ScannedDataset, out_dir: &Path, config: &RepoConfig) -> Result<DatasetRecord> {
    let dataset = &scanned.dataset;
    let mut record = DatasetRecord::describe(dataset);
    let full = build_full(dataset, out_dir)?;
    if config.partition {
        record.downloads = build_partitions(dataset, out_dir, &config.formats)?;
        record.seeds = Some(Seeds::default());
    } else {
        record.downloads = vec![full.clone()];
    }
    record.full = Some(full);
    Ok(record)
}

pub fn build_repository(input_dir: &Path, out_dir: &Path, options: &BuildOptions) -> Result<BuildSummary> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = options.jobs {
        builder = builder.num_threads(jobs.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker threads: {e}")))?;
    pool.install(|| {
        let scan = scan(input_dir)?;
        fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        let generated_at = timestamp(scan.datasets.iter().filter_map(|d| d.modified).max());

        let results: Vec<(PathBuf, Result<DatasetRecord>)> = scan
            .datasets
            .par_iter()
            .map(|s| (s.source.clone(), publish(s, out_dir, &options.config)))
            .collect();
        let mut failures = scan.failures;
        let mut records = Vec::new();
        for (path, result) in results {
            match result {
                Ok(record) => records.push(record),
                Err(e) => failures.push((path, e.to_string())),
            }
        }
        let manifest = build_metadata(records, &options.config, generated_at, out_dir)?;
        if options.site {
            write_site(&manifest, out_dir, &options.assets)?;
        }
        Ok(BuildSummary {
            manifest,
            failures,
            skipped: scan.skipped,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_five_configurations() {
        let configs = partition_configs(&Format::ALL);
        assert_eq!(configs.len(), 45);
        let names: BTreeSet<String> = configs.iter().map(|c| c.archive_name("d")).collect();
        assert_eq!(names.len(), 45);
        assert!(names.contains("d-iterative-10cv-mulan.tar.gz"));
        assert!(names.contains("d-random-2x5fcv-libsvm.tar.gz"));
        assert!(names.contains("d-stratified-holdout-csv.tar.gz"));
    }

    #[test]
    fn config_defaults_fill_missing_fields() {
        let c: RepoConfig = serde_json::from_str(r##"{"title": "Mine", "accent_color": "#fff"}"##).unwrap();
        assert_eq!(c.title, "Mine");
        assert!(c.partition);
        assert_eq!(c.formats.len(), 5);
    }

    #[test]
    fn download_entries_serialize_flat() {
        let d = Download {
            strategy: Some(Strategy::Iterative),
            scheme: Some(RepoScheme::TenFold),
            format: Format::Mulan,
            path: "p".into(),
        };
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["strategy"], "iterative");
        assert_eq!(json["scheme"], "10cv");
        assert_eq!(json["format"], "mulan");
        assert_eq!(serde_json::from_value::<Download>(json).unwrap(), d);
        assert_eq!(
            d.partition().unwrap().archive_name("x"),
            "x-iterative-10cv-mulan.tar.gz"
        );
    }
}
