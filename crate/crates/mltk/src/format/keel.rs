//! KEEL: ARFF-like files whose `@inputs` and `@outputs` lines name the
//! feature and label attributes. Labels keep their original placement.

use mltk_core::MlDataset;

use super::arff::{self, Flavor};
use super::FormatError;
use crate::error::ParseError;

pub(crate) fn parse(text: &str) -> Result<MlDataset, FormatError> {
    let header = arff::parse_header(text)?;
    let outputs = header
        .outputs
        .as_ref()
        .ok_or_else(|| ParseError::new(header.relation_line, 1, "no @outputs line"))?;
    let mut is_label = vec![false; header.attributes.len()];
    for name in outputs {
        let pos = header
            .position(name)
            .ok_or_else(|| ParseError::new(header.outputs_line, 1, format!("output `{name}` is not an attribute")))?;
        is_label[pos] = true;
    }
    if let Some(inputs) = &header.inputs {
        if let Some(name) = inputs.iter().find(|n| header.position(n).is_none()) {
            return Err(ParseError::new(header.outputs_line, 1, format!("input `{name}` is not an attribute")).into());
        }
    }
    super::from_arff(&header, text, &is_label, header.relation.clone())
}

pub(crate) fn render(ds: &MlDataset, sparse: bool) -> String {
    arff::render(ds, ds.name(), &ds.original_columns(), Flavor::Keel, sparse)
}
