//! Writing datasets and partition sets to files.

use std::fs;
use std::path::{Path, PathBuf};

use mltk_core::{materialize, Materialized, MlDataset, PartitionSet, Parts, Scheme};

use crate::error::{Error, Result};
use crate::format::{render, render_companion, Format};

pub const FALLBACK_BASENAME: &str = "unnamed_mldr";

#[derive(Debug, Clone)]
pub struct WriteOptions {
    pub formats: Vec<Format>,
    /// Sparse ARFF bodies. LibSVM is always sparse and CSV always dense.
    pub sparse: bool,
    /// File name stem; defaults to the dataset name.
    pub basename: Option<String>,
    pub overwrite: bool,
}

impl WriteOptions {
    pub fn new(formats: impl IntoIterator<Item = Format>) -> Self {
        WriteOptions {
            formats: formats.into_iter().collect(),
            sparse: false,
            basename: None,
            overwrite: false,
        }
    }
}

/// A file to be written, relative to the output directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub content: String,
}

/// `name` when it is usable as a file stem, otherwise `unnamed_mldr`.
pub fn basename_or_fallback(name: &str) -> String {
    let name = name.trim();
    let usable = !name.is_empty()
        && name != "."
        && name != ".."
        && !name.chars().any(|c| c.is_control() || "/\\:*?\"<>|".contains(c));
    if usable {
        name.to_string()
    } else {
        FALLBACK_BASENAME.to_string()
    }
}

fn base_for(dataset: &MlDataset, options: &WriteOptions) -> String {
    basename_or_fallback(options.basename.as_deref().unwrap_or(dataset.name()))
}

/// Stem per format. ARFF dialects share an extension, so when several are
/// requested together each gets its format name appended.
fn stems(base: &str, formats: &[Format]) -> Vec<(Format, String)> {
    let arff_count = formats.iter().filter(|f| f.is_arff()).count();
    let mut seen = Vec::new();
    formats
        .iter()
        .filter(|f| {
            let new = !seen.contains(*f);
            seen.push(**f);
            new
        })
        .map(|&f| {
            let stem = if f.is_arff() && arff_count > 1 {
                format!("{base}-{}", f.as_str())
            } else {
                base.to_string()
            };
            (f, stem)
        })
        .collect()
}

fn data_content(dataset: &MlDataset, format: Format, sparse: bool) -> String {
    if sparse && !format.supports_sparse_choice() {
        log::warn!("the sparse option has no effect on {format} output");
    }
    let text = render(dataset, format, sparse && format.supports_sparse_choice());
    if sparse && format.supports_sparse_choice() {
        let dense = render(dataset, format, false);
        if text.len() > dense.len() {
            log::warn!(
                "{} is too dense for sparse {format} output: {} bytes instead of {} dense",
                dataset.name(),
                text.len(),
                dense.len()
            );
        }
    }
    text
}

/// One data file per format, plus the MULAN XML and CSV label-name companions.
pub fn dataset_files(dataset: &MlDataset, options: &WriteOptions) -> Vec<OutputFile> {
    let base = base_for(dataset, options);
    let mut files = Vec::new();
    for (format, stem) in stems(&base, &options.formats) {
        files.push(OutputFile {
            name: format!("{stem}.{}", format.extension()),
            content: data_content(dataset, format, options.sparse),
        });
        if let Some((suffix, content)) = render_companion(dataset, format) {
            files.push(OutputFile {
                name: format!("{stem}{suffix}"),
                content,
            });
        }
    }
    files
}

/// Scheme tag used in partition file names.
pub fn scheme_tag(sets: &[PartitionSet]) -> Result<String> {
    match sets {
        [one] => Ok(match &one.spec.scheme {
            Scheme::Holdout(_) => "holdout".to_string(),
            Scheme::KFolds(k) => format!("{k}cv"),
            Scheme::Ratios(_) => "parts".to_string(),
        }),
        [a, b] if a.spec.scheme == Scheme::KFolds(5) && b.spec.scheme == Scheme::KFolds(5) => Ok("5x2".to_string()),
        _ => Err(Error::Invalid(
            "expected one partition set, or two 5-fold runs for 5x2".to_string(),
        )),
    }
}

/// Files for every part of the given partition sets:
/// `<base>-<scheme>-<strategy>-<i>-tra.<ext>` and `...-tst.<ext>` for folds,
/// `<base>-parts-<strategy>-<i>.<ext>` for ratio parts, with `i` 1-based and
/// running across both runs of a 5x2 set. Companion files are written once.
pub fn partition_files(dataset: &MlDataset, sets: &[PartitionSet], options: &WriteOptions) -> Result<Vec<OutputFile>> {
    let tag = scheme_tag(sets)?;
    let strategy = sets[0].spec.strategy.short_name();
    let base = base_for(dataset, options);
    let materialized: Vec<Materialized> = sets
        .iter()
        .map(|s| materialize(dataset, s))
        .collect::<std::result::Result<_, _>>()?;

    let mut files = Vec::new();
    for (format, stem) in stems(&base, &options.formats) {
        let ext = format.extension();
        let mut i = 0;
        for m in &materialized {
            match m {
                Materialized::Folds(pairs) => {
                    for (train, test) in pairs {
                        i += 1;
                        for (part, role) in [(train, "tra"), (test, "tst")] {
                            files.push(OutputFile {
                                name: format!("{stem}-{tag}-{strategy}-{i}-{role}.{ext}"),
                                content: data_content(part, format, options.sparse),
                            });
                        }
                    }
                }
                Materialized::Parts(parts) => {
                    for part in parts {
                        i += 1;
                        files.push(OutputFile {
                            name: format!("{stem}-{tag}-{strategy}-{i}.{ext}"),
                            content: data_content(part, format, options.sparse),
                        });
                    }
                }
            }
        }
        if let Some((suffix, content)) = render_companion(dataset, format) {
            files.push(OutputFile {
                name: format!("{stem}{suffix}"),
                content,
            });
        }
    }
    Ok(files)
}

/// Writes `files` under `dir`, refusing to replace existing files unless `overwrite`.
pub fn write_files(dir: &Path, files: &[OutputFile], overwrite: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let paths: Vec<PathBuf> = files.iter().map(|f| dir.join(&f.name)).collect();
    if !overwrite {
        if let Some(existing) = paths.iter().find(|p| p.exists()) {
            return Err(Error::WouldOverwrite(existing.clone()));
        }
    }
    for (file, path) in files.iter().zip(&paths) {
        fs::write(path, &file.content).map_err(|e| Error::io(path, e))?;
    }
    Ok(paths)
}

pub fn write_dataset(dataset: &MlDataset, dir: &Path, options: &WriteOptions) -> Result<Vec<PathBuf>> {
    write_files(dir, &dataset_files(dataset, options), options.overwrite)
}

pub fn write_partitions(
    dataset: &MlDataset,
    sets: &[PartitionSet],
    dir: &Path,
    options: &WriteOptions,
) -> Result<Vec<PathBuf>> {
    write_files(dir, &partition_files(dataset, sets, options)?, options.overwrite)
}

/// Number of data files a partition set expands to per format.
pub fn data_files_per_format(set: &PartitionSet) -> usize {
    match &set.parts {
        Parts::Ratios(p) => p.len(),
        Parts::Folds(f) => 2 * f.len(),
    }
}
