//! MEKA: ARFF whose relation name carries the label count, as in
//! `@relation 'emotions: -C 6'`. A positive count marks the first attributes
//! as labels, a negative one the last.

use mltk_core::{Column, MlDataset};

use super::arff::{self, Flavor};
use super::FormatError;
use crate::error::ParseError;

/// The signed `-C` option of a MEKA relation name.
pub(crate) fn label_count(relation: &str) -> Option<i64> {
    let mut words = relation.split_whitespace();
    while let Some(w) = words.next() {
        if w == "-C" {
            return words.next()?.parse().ok();
        }
        if let Some(n) = w.strip_prefix("-C") {
            if let Ok(n) = n.parse() {
                return Some(n);
            }
        }
    }
    None
}

/// The relation name without its option string.
pub(crate) fn dataset_name(relation: &str) -> String {
    let options_start = relation
        .match_indices(" -")
        .map(|(i, _)| i)
        .next()
        .unwrap_or(relation.len());
    let name = relation[..options_start].trim_end();
    name.strip_suffix(':').unwrap_or(name).trim().to_string()
}

pub(crate) fn parse(text: &str) -> Result<MlDataset, FormatError> {
    let header = arff::parse_header(text)?;
    let width = header.attributes.len() as i64;
    let count = label_count(&header.relation)
        .ok_or_else(|| ParseError::new(header.relation_line, 1, "relation name has no `-C <labels>` option"))?;
    if count == 0 || count.abs() >= width {
        return Err(ParseError::new(
            header.relation_line,
            1,
            format!("label count {count} does not fit {width} attributes"),
        )
        .into());
    }
    let is_label: Vec<bool> = (0..width)
        .map(|i| if count > 0 { i < count } else { i >= width + count })
        .collect();
    super::from_arff(&header, text, &is_label, dataset_name(&header.relation))
}

/// Labels first, as MEKA expects.
pub(crate) fn render(ds: &MlDataset, sparse: bool) -> String {
    let order: Vec<Column> = (0..ds.num_labels())
        .map(Column::Label)
        .chain((0..ds.num_features()).map(Column::Feature))
        .collect();
    let relation = format!("{}: -C {}", ds.name(), ds.num_labels());
    arff::render(ds, &relation, &order, Flavor::Weka, sparse)
}
