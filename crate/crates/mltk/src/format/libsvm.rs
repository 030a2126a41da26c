//! LibSVM multi-label text: each row starts with comma-separated 0-based
//! label indices (omitted for an empty labelset) followed by `index:value`
//! pairs with 1-based feature indices. Zero features are omitted, `index:?`
//! marks a missing value and nominal values are written as category indices.

use mltk_core::{AttributeMeta, DatasetParts, Labelset, MlDataset, Value};

use super::number::format_number;
use super::{categories, FormatError, Schema};
use crate::error::ParseError;

struct Row {
    labels: Vec<usize>,
    pairs: Vec<(usize, Option<f64>, usize)>,
    line: usize,
}

fn parse_rows(text: &str) -> Result<Vec<Row>, ParseError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let mut row = Row {
            labels: Vec::new(),
            pairs: Vec::new(),
            line,
        };
        let mut column = 1;
        for (n, word) in content.split_whitespace().enumerate() {
            column = content[column - 1..].find(word).map_or(column, |p| p + column);
            if n == 0 && !word.contains(':') {
                for part in word.split(',') {
                    let j: usize = part
                        .parse()
                        .map_err(|_| ParseError::new(line, column, format!("`{part}` is not a label index")))?;
                    row.labels.push(j);
                }
                continue;
            }
            let (index, value) = word
                .split_once(':')
                .ok_or_else(|| ParseError::new(line, column, format!("`{word}` is not an index:value pair")))?;
            let index: usize =
                index.parse().ok().filter(|&i| i >= 1).ok_or_else(|| {
                    ParseError::new(line, column, format!("`{index}` is not a 1-based feature index"))
                })?;
            let value = if value == "?" {
                None
            } else {
                Some(
                    value
                        .parse::<f64>()
                        .map_err(|_| ParseError::new(line, column, format!("`{value}` is not a number")))?,
                )
            };
            row.pairs.push((index - 1, value, column));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub(crate) fn parse(
    text: &str,
    label_names: Option<Vec<String>>,
    num_labels: Option<usize>,
    schema: Option<&Schema>,
    name: &str,
) -> Result<MlDataset, FormatError> {
    let rows = parse_rows(text)?;
    if rows.is_empty() {
        return Err(ParseError::new(1, 1, "no instances").into());
    }
    let max_label = rows.iter().flat_map(|r| r.labels.iter().copied()).max();
    let max_feature = rows.iter().flat_map(|r| r.pairs.iter().map(|p| p.0)).max();

    let label_names = match (schema, label_names, num_labels) {
        (Some(s), _, _) => s.label_names.clone(),
        (None, Some(names), _) => names,
        (None, None, Some(k)) => (0..k).map(|j| format!("y{j}")).collect(),
        (None, None, None) => (0..max_label.map_or(0, |m| m + 1)).map(|j| format!("y{j}")).collect(),
    };
    let features: Vec<AttributeMeta> = match schema {
        Some(s) => s.features.clone(),
        None => (0..max_feature.map_or(1, |m| m + 1))
            .map(|j| AttributeMeta::numeric(format!("x{}", j + 1)))
            .collect(),
    };
    let k = label_names.len();
    let f = features.len();

    let mut values = Vec::with_capacity(rows.len() * f);
    let mut labels = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut labelset = Labelset::empty(k);
        for &j in &row.labels {
            if j >= k {
                return Err(ParseError::new(
                    row.line,
                    1,
                    format!("label index {j} out of range (dataset has {k} labels)"),
                )
                .into());
            }
            labelset.insert(j);
        }
        labels.push(labelset);
        let start = values.len();
        for attr in &features {
            values.push(match categories(attr) {
                Some(_) => Value::Nominal(0),
                None => Value::Numeric(0.0),
            });
        }
        for &(j, value, column) in &row.pairs {
            if j >= f {
                return Err(ParseError::new(
                    row.line,
                    column,
                    format!("feature index {} out of range (dataset has {f} features)", j + 1),
                )
                .into());
            }
            values[start + j] = match (value, categories(&features[j])) {
                (None, _) => Value::Missing,
                (Some(v), None) => Value::Numeric(v),
                (Some(v), Some(cats)) => {
                    if v.fract() != 0.0 || v < 0.0 || v as usize >= cats.len() {
                        return Err(ParseError::new(
                            row.line,
                            column,
                            format!("{v} is not a category index of `{}`", features[j].name),
                        )
                        .into());
                    }
                    Value::Nominal(v as u32)
                }
            };
        }
    }

    Ok(MlDataset::new(DatasetParts {
        name: name.to_string(),
        features,
        label_names,
        values,
        labels,
        label_positions: None,
        citation: None,
    })?)
}

pub(crate) fn render(ds: &MlDataset) -> String {
    let mut out = String::new();
    for i in 0..ds.num_instances() {
        let mut parts: Vec<String> = Vec::new();
        let active: Vec<String> = ds.labelset(i).iter().map(|j| j.to_string()).collect();
        if !active.is_empty() {
            parts.push(active.join(","));
        }
        for (j, value) in ds.row(i).iter().enumerate() {
            let text = match *value {
                Value::Missing => "?".to_string(),
                v if v.is_zero() => continue,
                Value::Numeric(v) => format_number(v),
                Value::Nominal(c) => c.to_string(),
            };
            parts.push(format!("{}:{text}", j + 1));
        }
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}
