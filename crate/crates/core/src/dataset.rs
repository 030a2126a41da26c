//! The in-memory multi-label dataset.
//!
//! A dataset holds `n` instances, each made of `f` input feature values and a
//! labelset over `k` labels. Attribute metadata keeps the input features first
//! and the labels after them; the position the labels had in the source file
//! is remembered separately so writers can reproduce it.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::DatasetError;
use crate::labelset::Labelset;

/// One feature cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Numeric(f64),
    /// Index into the attribute's category list.
    Nominal(u32),
    Missing,
}

impl Value {
    /// Numeric zero or the first category of a nominal attribute. Missing cells are not zero.
    pub fn is_zero(&self) -> bool {
        match *self {
            Value::Numeric(v) => v == 0.0,
            Value::Nominal(i) => i == 0,
            Value::Missing => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "type", rename_all = "lowercase")
)]
pub enum AttributeKind {
    Numeric,
    Nominal {
        categories: Vec<String>,
    },
    /// Binary output attribute with implicit categories `{0, 1}`.
    Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AttributeMeta {
    pub name: String,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: AttributeKind,
}

impl AttributeMeta {
    pub fn numeric(name: impl Into<String>) -> Self {
        AttributeMeta {
            name: name.into(),
            kind: AttributeKind::Numeric,
        }
    }

    pub fn nominal<S: Into<String>>(name: impl Into<String>, categories: impl IntoIterator<Item = S>) -> Self {
        AttributeMeta {
            name: name.into(),
            kind: AttributeKind::Nominal {
                categories: categories.into_iter().map(Into::into).collect(),
            },
        }
    }

    pub fn label(name: impl Into<String>) -> Self {
        AttributeMeta {
            name: name.into(),
            kind: AttributeKind::Label,
        }
    }

    pub fn is_label(&self) -> bool {
        matches!(self.kind, AttributeKind::Label)
    }
}

/// A column in the original (file) attribute order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Feature(usize),
    Label(usize),
}

/// Unvalidated pieces of a dataset, consumed by [`MlDataset::new`].
#[derive(Debug, Clone, Default)]
pub struct DatasetParts {
    pub name: String,
    /// Input feature attributes (numeric or nominal), in column order.
    pub features: Vec<AttributeMeta>,
    pub label_names: Vec<String>,
    /// Row-major `n x f` feature matrix.
    pub values: Vec<Value>,
    /// One labelset of width `k` per instance.
    pub labels: Vec<Labelset>,
    /// Original column index of every label, when labels were not stored after
    /// the features. Strictly increasing, each `< f + k`.
    pub label_positions: Option<Vec<usize>>,
    pub citation: Option<String>,
}

/// Immutable, validated multi-label dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct MlDataset {
    name: String,
    attributes: Vec<AttributeMeta>,
    num_features: usize,
    values: Vec<Value>,
    labels: Vec<Labelset>,
    label_positions: Vec<usize>,
    citation: Option<String>,
}

impl MlDataset {
    pub fn new(parts: DatasetParts) -> Result<Self, DatasetError> {
        let DatasetParts {
            name,
            features,
            label_names,
            values,
            labels,
            label_positions,
            citation,
        } = parts;
        let n = labels.len();
        let f = features.len();
        let k = label_names.len();
        if n == 0 {
            return Err(DatasetError::NoInstances);
        }
        if f == 0 {
            return Err(DatasetError::NoFeatures);
        }
        if k < 2 {
            return Err(DatasetError::TooFewLabels(k));
        }

        let mut seen = BTreeSet::new();
        for attr in &features {
            if attr.is_label() {
                return Err(DatasetError::LabelAmongFeatures(attr.name.clone()));
            }
            if !seen.insert(attr.name.as_str()) {
                return Err(DatasetError::DuplicateAttribute(attr.name.clone()));
            }
        }
        for label in &label_names {
            if !seen.insert(label.as_str()) {
                return Err(DatasetError::DuplicateAttribute(label.clone()));
            }
        }

        if values.len() != n * f {
            return Err(DatasetError::FeatureShape {
                found: values.len(),
                expected: n * f,
                rows: n,
                cols: f,
            });
        }
        for (row, labelset) in labels.iter().enumerate() {
            if labelset.width() != k {
                return Err(DatasetError::LabelWidth {
                    row,
                    found: labelset.width(),
                    expected: k,
                });
            }
        }
        for (cell, value) in values.iter().enumerate() {
            let (row, col) = (cell / f, cell % f);
            let attr = &features[col];
            match (value, &attr.kind) {
                (Value::Nominal(index), AttributeKind::Nominal { categories }) => {
                    if *index as usize >= categories.len() {
                        return Err(DatasetError::NominalOutOfRange {
                            row,
                            attribute: attr.name.clone(),
                            index: *index,
                            categories: categories.len(),
                        });
                    }
                }
                (Value::Nominal(_), _) | (Value::Numeric(_), AttributeKind::Nominal { .. }) => {
                    return Err(DatasetError::KindMismatch {
                        row,
                        attribute: attr.name.clone(),
                    });
                }
                _ => {}
            }
        }

        let label_positions = match label_positions {
            Some(positions) => {
                let valid = positions.len() == k
                    && positions.windows(2).all(|w| w[0] < w[1])
                    && positions.last().is_some_and(|&p| p < f + k);
                if !valid {
                    return Err(DatasetError::InvalidLabelPositions {
                        labels: k,
                        columns: f + k,
                    });
                }
                positions
            }
            None => (f..f + k).collect(),
        };

        let mut attributes = features;
        attributes.extend(label_names.into_iter().map(AttributeMeta::label));
        Ok(MlDataset {
            name,
            attributes,
            num_features: f,
            values,
            labels,
            label_positions,
            citation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn citation(&self) -> Option<&str> {
        self.citation.as_deref()
    }

    /// `n`
    pub fn num_instances(&self) -> usize {
        self.labels.len()
    }

    /// `f`
    pub fn num_features(&self) -> usize {
        self.num_features
    }

    /// `k`
    pub fn num_labels(&self) -> usize {
        self.attributes.len() - self.num_features
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    /// All attributes: the `f` features followed by the `k` labels.
    pub fn attributes(&self) -> &[AttributeMeta] {
        &self.attributes
    }

    pub fn feature_attributes(&self) -> &[AttributeMeta] {
        &self.attributes[..self.num_features]
    }

    pub fn label_attributes(&self) -> &[AttributeMeta] {
        &self.attributes[self.num_features..]
    }

    pub fn label_names(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.label_attributes().iter().map(|a| a.name.as_str())
    }

    pub fn label_name(&self, label: usize) -> &str {
        &self.attributes[self.num_features + label].name
    }

    /// Feature values of instance `i`.
    pub fn row(&self, i: usize) -> &[Value] {
        &self.values[i * self.num_features..(i + 1) * self.num_features]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn labelset(&self, i: usize) -> &Labelset {
        &self.labels[i]
    }

    /// Labelsets of all instances, in instance order.
    pub fn labels(&self) -> &[Labelset] {
        &self.labels
    }

    /// Original column index of each label.
    pub fn label_positions(&self) -> &[usize] {
        &self.label_positions
    }

    pub fn labels_at_end(&self) -> bool {
        self.label_positions.first() == Some(&self.num_features)
    }

    /// The columns in their original order, interleaving features and labels
    /// as they were in the source.
    pub fn original_columns(&self) -> Vec<Column> {
        let total = self.attributes.len();
        let mut columns = Vec::with_capacity(total);
        let mut next_label = 0;
        let mut next_feature = 0;
        for position in 0..total {
            if self.label_positions.get(next_label) == Some(&position) {
                columns.push(Column::Label(next_label));
                next_label += 1;
            } else {
                columns.push(Column::Feature(next_feature));
                next_feature += 1;
            }
        }
        columns
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_citation(mut self, citation: Option<String>) -> Self {
        self.citation = citation;
        self
    }

    /// Same dataset with labels placed after the features.
    pub fn with_labels_at_end(mut self) -> Self {
        let f = self.num_features;
        self.label_positions = (f..f + self.num_labels()).collect();
        self
    }

    /// Sub-dataset made of the given instances, in the given order.
    ///
    /// Attribute metadata, label order, label placement, name and citation are kept.
    pub fn select(&self, indices: &[usize]) -> Result<MlDataset, DatasetError> {
        let n = self.num_instances();
        if indices.is_empty() {
            return Err(DatasetError::NoInstances);
        }
        let mut values = Vec::with_capacity(indices.len() * self.num_features);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= n {
                return Err(DatasetError::IndexOutOfRange { index: i, n });
            }
            values.extend_from_slice(self.row(i));
            labels.push(self.labels[i].clone());
        }
        Ok(MlDataset {
            name: self.name.clone(),
            attributes: self.attributes.clone(),
            num_features: self.num_features,
            values,
            labels,
            label_positions: self.label_positions.clone(),
            citation: self.citation.clone(),
        })
    }
}
