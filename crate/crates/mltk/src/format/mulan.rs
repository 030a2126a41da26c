//! MULAN: ARFF data plus an XML file naming the label attributes.

use std::collections::HashSet;

use mltk_core::MlDataset;
use quick_xml::events::Event;
use quick_xml::Reader;

use super::arff::{self, Flavor};
use super::FormatError;
use crate::error::ParseError;

pub(crate) const NAMESPACE: &str = "http://mulan.sourceforge.net/labels";

fn position(xml: &str, offset: usize) -> (usize, usize) {
    let before = &xml[..offset.min(xml.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Label names in document order. Nested (hierarchical) label elements are flattened.
pub(crate) fn parse_labels_xml(xml: &str) -> Result<Vec<String>, ParseError> {
    let mut reader = Reader::from_str(xml);
    let mut names = Vec::new();
    let mut seen = HashSet::new();
    loop {
        let offset = reader.buffer_position() as usize;
        let fail = |message: String| {
            let (line, column) = position(xml, offset);
            ParseError::new(line, column, message)
        };
        match reader.read_event() {
            Ok(Event::Start(e)) | Ok(Event::Empty(e)) if e.local_name().as_ref() == b"label" => {
                let mut name = None;
                for attr in e.attributes() {
                    let attr = attr.map_err(|err| fail(err.to_string()))?;
                    if attr.key.local_name().as_ref() == b"name" {
                        let value = attr.unescape_value().map_err(|err| fail(err.to_string()))?;
                        name = Some(value.into_owned());
                    }
                }
                let name = name.ok_or_else(|| fail("label element without a name attribute".into()))?;
                if !seen.insert(name.clone()) {
                    return Err(fail(format!("label `{name}` listed twice")));
                }
                names.push(name);
            }
            Ok(Event::Eof) => break,
            Ok(_) => {}
            Err(err) => return Err(fail(err.to_string())),
        }
    }
    if names.is_empty() {
        return Err(ParseError::new(1, 1, "no label elements found"));
    }
    Ok(names)
}

pub(crate) fn parse(text: &str, label_names: &[String]) -> Result<MlDataset, FormatError> {
    let header = arff::parse_header(text)?;
    let mut is_label = vec![false; header.attributes.len()];
    for name in label_names {
        let pos = header.position(name).ok_or_else(|| {
            ParseError::new(
                header.relation_line,
                1,
                format!("label `{name}` from the XML file is not an attribute"),
            )
        })?;
        is_label[pos] = true;
    }
    super::from_arff(&header, text, &is_label, header.relation.clone())
}

pub(crate) fn render(ds: &MlDataset, sparse: bool) -> String {
    arff::render(ds, ds.name(), &ds.original_columns(), Flavor::Weka, sparse)
}

pub(crate) fn render_labels_xml(ds: &MlDataset) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n");
    out.push_str(&format!("<labels xmlns=\"{NAMESPACE}\">\n"));
    for name in ds.label_names() {
        out.push_str(&format!("  <label name=\"{}\"/>\n", quick_xml::escape::escape(name)));
    }
    out.push_str("</labels>\n");
    out
}
