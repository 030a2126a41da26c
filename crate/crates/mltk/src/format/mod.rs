//! Readers and writers for the five interchange formats.
//!
//! | format | data file | labels identified by |
//! |--------|-----------|----------------------|
//! | MULAN  | ARFF      | sibling XML file listing the label names |
//! | MEKA   | ARFF      | `-C k` in the relation name (first `k`, or last `-k`, attributes) |
//! | KEEL   | ARFF      | `@outputs` header line |
//! | LibSVM | text      | 0-based label indices leading each row |
//! | CSV    | CSV       | sibling `<name>_labels.csv` with one label name per line |

pub(crate) mod arff;
mod csv;
mod keel;
mod libsvm;
mod meka;
mod mulan;
mod number;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mltk_core::{AttributeKind, AttributeMeta, DatasetError, DatasetParts, MlDataset, Value};

use crate::error::{Error, ParseError, Result};

pub use number::format_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Mulan,
    Meka,
    Keel,
    Libsvm,
    Csv,
}

impl Format {
    pub const ALL: [Format; 5] = [Format::Mulan, Format::Meka, Format::Keel, Format::Libsvm, Format::Csv];

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Mulan => "mulan",
            Format::Meka => "meka",
            Format::Keel => "keel",
            Format::Libsvm => "libsvm",
            Format::Csv => "csv",
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Mulan | Format::Meka | Format::Keel => "arff",
            Format::Libsvm => "svm",
            Format::Csv => "csv",
        }
    }

    pub fn is_arff(&self) -> bool {
        self.extension() == "arff"
    }

    /// Whether the `sparse` write option changes anything for this format.
    pub fn supports_sparse_choice(&self) -> bool {
        self.is_arff()
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mulan" => Ok(Format::Mulan),
            "meka" => Ok(Format::Meka),
            "keel" => Ok(Format::Keel),
            "libsvm" | "svm" => Ok(Format::Libsvm),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format `{other}` (expected mulan, meka, keel, libsvm or csv)"
            )),
        }
    }
}

/// Attribute layout used to read formats that cannot describe it themselves
/// (CSV has no nominal declarations, LibSVM has neither names nor kinds).
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    pub features: Vec<AttributeMeta>,
    pub label_names: Vec<String>,
}

impl Schema {
    pub fn of(dataset: &MlDataset) -> Self {
        Schema {
            features: dataset.feature_attributes().to_vec(),
            label_names: dataset.label_names().map(String::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReadOptions {
    /// MULAN XML file or CSV/LibSVM label-names file. Looked up next to the
    /// data file when absent.
    pub companion: Option<PathBuf>,
    /// LibSVM label count.
    pub num_labels: Option<usize>,
    pub schema: Option<Schema>,
    /// Dataset name; defaults to the relation name, or the file stem for CSV and LibSVM.
    pub name: Option<String>,
}

/// Failure inside a format parser, before the file path is attached.
#[derive(Debug)]
pub(crate) enum FormatError {
    Parse(ParseError),
    Dataset(DatasetError),
    MissingCompanion(&'static str),
}

impl From<ParseError> for FormatError {
    fn from(e: ParseError) -> Self {
        FormatError::Parse(e)
    }
}

impl From<DatasetError> for FormatError {
    fn from(e: DatasetError) -> Self {
        FormatError::Dataset(e)
    }
}

impl FormatError {
    fn at(self, path: &Path) -> Error {
        match self {
            FormatError::Parse(e) => Error::parse(path, e),
            FormatError::Dataset(e) => Error::dataset(path, e),
            FormatError::MissingCompanion(what) => Error::MissingCompanion {
                what,
                data: path.to_path_buf(),
            },
        }
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Finds a file ending in `suffix` that belongs to `data`: the same stem,
/// else the longest stem that prefixes the data stem (as partition files
/// share their dataset's companions), else the only such file in the
/// directory when `allow_single` is set.
pub fn find_companion(data: &Path, suffix: &str, allow_single: bool) -> Option<PathBuf> {
    let dir = match data.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let stem = file_stem(data);
    let exact = dir.join(format!("{stem}{suffix}"));
    if exact.is_file() {
        return Some(exact);
    }
    let mut candidates: Vec<(String, PathBuf)> = fs::read_dir(&dir)
        .ok()?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().to_string_lossy().into_owned();
            let cand = name.strip_suffix(suffix)?.to_string();
            (e.path().is_file() && e.path() != data).then(|| (cand, e.path()))
        })
        .collect();
    candidates.sort();
    let prefixed = candidates
        .iter()
        .filter(|(cand, _)| {
            !cand.is_empty()
                && stem.len() > cand.len()
                && stem.starts_with(cand.as_str())
                && stem[cand.len()..].starts_with(['-', '_', '.'])
        })
        .max_by_key(|(cand, _)| cand.len());
    if let Some((_, path)) = prefixed {
        return Some(path.clone());
    }
    if allow_single && candidates.len() == 1 {
        return Some(candidates.remove(0).1);
    }
    None
}

pub const MULAN_XML_SUFFIX: &str = ".xml";
pub const LABEL_NAMES_SUFFIX: &str = "_labels.csv";

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Guesses the format from the extension and, for ARFF files, the header:
/// `@inputs`/`@outputs` mean KEEL, a `-C` option in the relation name means
/// MEKA, anything else is MULAN.
pub fn detect_format(path: &Path) -> Result<Format> {
    let ext = path
        .extension()
        .map(|e| e.to_string_lossy().to_ascii_lowercase())
        .unwrap_or_default();
    match ext.as_str() {
        "csv" => Ok(Format::Csv),
        "svm" | "libsvm" => Ok(Format::Libsvm),
        "arff" | "dat" => {
            let text = read_text(path)?;
            let header = arff::parse_header(&text).map_err(|e| Error::parse(path, e))?;
            if header.outputs.is_some() {
                Ok(Format::Keel)
            } else if meka::label_count(&header.relation).is_some() {
                Ok(Format::Meka)
            } else {
                Ok(Format::Mulan)
            }
        }
        _ => Err(Error::UnknownFormat(path.to_path_buf())),
    }
}

pub fn read(path: &Path, format: Format, options: &ReadOptions) -> Result<MlDataset> {
    let text = read_text(path)?;
    let stem = file_stem(path);
    let dataset = match format {
        Format::Mulan => {
            let xml_path = options
                .companion
                .clone()
                .or_else(|| find_companion(path, MULAN_XML_SUFFIX, true))
                .ok_or_else(|| FormatError::MissingCompanion("MULAN label XML file").at(path))?;
            let xml = read_text(&xml_path)?;
            let names = mulan::parse_labels_xml(&xml).map_err(|e| Error::parse(&xml_path, e))?;
            mulan::parse(&text, &names).map_err(|e| e.at(path))?
        }
        Format::Meka => meka::parse(&text).map_err(|e| e.at(path))?,
        Format::Keel => keel::parse(&text).map_err(|e| e.at(path))?,
        Format::Csv => {
            let names = match (&options.companion, &options.schema) {
                (Some(p), _) => read_label_names(p)?,
                (None, Some(schema)) => schema.label_names.clone(),
                (None, None) => {
                    let p = find_companion(path, LABEL_NAMES_SUFFIX, true)
                        .ok_or_else(|| FormatError::MissingCompanion("label names file").at(path))?;
                    read_label_names(&p)?
                }
            };
            csv::parse(&text, &names, options.schema.as_ref(), &stem).map_err(|e| e.at(path))?
        }
        Format::Libsvm => {
            let names = match &options.companion {
                Some(p) => Some(read_label_names(p)?),
                None if options.schema.is_none() && options.num_labels.is_none() => {
                    match find_companion(path, LABEL_NAMES_SUFFIX, false) {
                        Some(p) => Some(read_label_names(&p)?),
                        None => None,
                    }
                }
                None => None,
            };
            libsvm::parse(&text, names, options.num_labels, options.schema.as_ref(), &stem).map_err(|e| e.at(path))?
        }
    };
    let dataset = match &options.name {
        Some(name) => dataset.with_name(name.clone()),
        None => dataset,
    };
    let sidecar = find_companion(path, ".bib", false);
    Ok(match sidecar {
        Some(bib) => {
            let citation = read_text(&bib)?;
            dataset.with_citation(Some(citation.trim_end().to_string()))
        }
        None => dataset,
    })
}

/// Reads a dataset, detecting its format when `format` is `None`.
pub fn read_any(path: &Path, format: Option<Format>, options: &ReadOptions) -> Result<(MlDataset, Format)> {
    if !path.exists() {
        return Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "file not found"),
        ));
    }
    let format = match format {
        Some(f) => f,
        None => detect_format(path)?,
    };
    Ok((read(path, format, options)?, format))
}

pub fn read_label_names(path: &Path) -> Result<Vec<String>> {
    let text = read_text(path)?;
    csv::parse_label_names(&text).map_err(|e| Error::parse(path, e))
}

/// Main data file content in `format`. `sparse` selects the sparse ARFF body
/// and is ignored by LibSVM (always sparse) and CSV (always dense).
pub fn render(dataset: &MlDataset, format: Format, sparse: bool) -> String {
    match format {
        Format::Mulan => mulan::render(dataset, sparse),
        Format::Meka => meka::render(dataset, sparse),
        Format::Keel => keel::render(dataset, sparse),
        Format::Libsvm => libsvm::render(dataset),
        Format::Csv => csv::render(dataset),
    }
}

/// The companion file a format needs, as `(file name suffix, content)`.
pub fn render_companion(dataset: &MlDataset, format: Format) -> Option<(&'static str, String)> {
    match format {
        Format::Mulan => Some((MULAN_XML_SUFFIX, mulan::render_labels_xml(dataset))),
        Format::Csv => Some((LABEL_NAMES_SUFFIX, csv::render_label_names(dataset))),
        _ => None,
    }
}

/// Builds a dataset from a parsed ARFF document whose label columns are known.
fn from_arff(header: &arff::Header, text: &str, is_label: &[bool], name: String) -> Result<MlDataset, FormatError> {
    let body = arff::parse_body(header, text, is_label)?;
    let mut features = Vec::new();
    let mut label_names = Vec::new();
    let mut positions = Vec::new();
    for (pos, (attr, &label)) in header.attributes.iter().zip(is_label).enumerate() {
        if label {
            label_names.push(attr.name.clone());
            positions.push(pos);
        } else {
            features.push(match &attr.kind {
                arff::AttrType::Numeric => AttributeMeta::numeric(attr.name.clone()),
                arff::AttrType::Nominal(cats) => AttributeMeta::nominal(attr.name.clone(), cats.clone()),
            });
        }
    }
    Ok(MlDataset::new(DatasetParts {
        name,
        features,
        label_names,
        values: body.values,
        labels: body.labels,
        label_positions: Some(positions),
        citation: header.citation(),
    })?)
}

/// Structural and numeric equality used by round-trip checks: names,
/// attribute kinds, label sets and missing cells must match exactly, numeric
/// cells within `tol`. Label placement and citations are not compared.
pub fn same_content(a: &MlDataset, b: &MlDataset, tol: f64) -> std::result::Result<(), String> {
    if a.name() != b.name() {
        return Err(format!("name `{}` != `{}`", a.name(), b.name()));
    }
    if a.feature_attributes() != b.feature_attributes() {
        return Err("feature attributes differ".into());
    }
    if !a.label_names().eq(b.label_names()) {
        return Err("label names differ".into());
    }
    if a.labels() != b.labels() {
        return Err("labelsets differ".into());
    }
    if a.num_instances() != b.num_instances() {
        return Err("instance counts differ".into());
    }
    for (idx, (x, y)) in a.values().iter().zip(b.values()).enumerate() {
        let same = match (x, y) {
            (Value::Numeric(x), Value::Numeric(y)) => (x - y).abs() <= tol || (x.is_nan() && y.is_nan()),
            _ => x == y,
        };
        if !same {
            let f = a.num_features();
            return Err(format!("cell ({}, {}) {x:?} != {y:?}", idx / f, idx % f));
        }
    }
    Ok(())
}

/// Categories of a nominal feature.
pub(crate) fn categories(attr: &AttributeMeta) -> Option<&[String]> {
    match &attr.kind {
        AttributeKind::Nominal { categories } => Some(categories),
        _ => None,
    }
}
