//! CSV: header row of attribute names, labels as trailing 0/1 columns, and a
//! companion file with one label name per line.

use std::collections::HashMap;

use mltk_core::{AttributeMeta, DatasetParts, Labelset, MlDataset, Value};

use super::number::format_number;
use super::{categories, FormatError, Schema};
use crate::error::ParseError;

fn csv_error(e: ::csv::Error) -> ParseError {
    let line = e.position().map_or(1, |p| p.line() as usize);
    ParseError::new(line, 1, e.to_string())
}

fn is_missing(s: &str) -> bool {
    s.is_empty() || s == "?"
}

pub(crate) fn parse_label_names(text: &str) -> Result<Vec<String>, ParseError> {
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut names = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(1, |p| p.line() as usize);
        match record.len() {
            0 => {}
            1 if record[0].trim().is_empty() => {}
            1 => names.push(record[0].trim().to_string()),
            _ => return Err(ParseError::new(line, 1, "expected one label name per line")),
        }
    }
    if names.is_empty() {
        return Err(ParseError::new(1, 1, "no label names"));
    }
    Ok(names)
}

pub(crate) fn parse(
    text: &str,
    label_names: &[String],
    schema: Option<&Schema>,
    name: &str,
) -> Result<MlDataset, FormatError> {
    let mut reader = ::csv::ReaderBuilder::new()
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().map_err(csv_error)?.iter().map(String::from).collect();
    let label_of: HashMap<&str, usize> = label_names.iter().enumerate().map(|(j, n)| (n.as_str(), j)).collect();
    let mut label_cols = vec![None; header.len()];
    for (col, h) in header.iter().enumerate() {
        label_cols[col] = label_of.get(h.as_str()).copied();
    }
    if let Some(missing) = label_names.iter().find(|n| !header.contains(n)) {
        return Err(ParseError::new(1, 1, format!("label `{missing}` is not a column")).into());
    }
    let feature_cols: Vec<usize> = (0..header.len()).filter(|&c| label_cols[c].is_none()).collect();
    let k = label_names.len();

    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(1, |p| p.line() as usize);
        if record.len() != header.len() {
            return Err(ParseError::new(
                line,
                1,
                format!("expected {} fields, found {}", header.len(), record.len()),
            )
            .into());
        }
        let mut labelset = Labelset::empty(k);
        for (col, field) in record.iter().enumerate() {
            if let Some(j) = label_cols[col] {
                match field {
                    "1" => labelset.insert(j),
                    "0" => {}
                    other => {
                        return Err(
                            ParseError::new(line, col + 1, format!("label value `{other}` outside {{0,1}}")).into(),
                        )
                    }
                }
            }
        }
        labels.push(labelset);
        cells.push(feature_cols.iter().map(|&c| record[c].to_string()).collect());
    }

    let features: Vec<AttributeMeta> = match schema {
        Some(schema) => feature_cols
            .iter()
            .map(|&c| {
                schema
                    .features
                    .iter()
                    .find(|a| a.name == header[c])
                    .cloned()
                    .ok_or_else(|| ParseError::new(1, c + 1, format!("column `{}` is not in the schema", header[c])))
            })
            .collect::<Result<_, _>>()?,
        None => feature_cols
            .iter()
            .enumerate()
            .map(|(j, &c)| infer_kind(&header[c], cells.iter().map(|row| row[j].as_str())))
            .collect(),
    };

    let lookups: Vec<Option<HashMap<&str, u32>>> = features
        .iter()
        .map(|a| categories(a).map(|cats| cats.iter().enumerate().map(|(i, c)| (c.as_str(), i as u32)).collect()))
        .collect();
    let mut values = Vec::with_capacity(cells.len() * features.len());
    for (i, row) in cells.iter().enumerate() {
        for (j, field) in row.iter().enumerate() {
            let line = i + 2;
            let value =
                if is_missing(field) {
                    Value::Missing
                } else if let Some(map) = &lookups[j] {
                    Value::Nominal(*map.get(field.as_str()).ok_or_else(|| {
                        ParseError::new(
                            line,
                            feature_cols[j] + 1,
                            format!("`{field}` is not a category of `{}`", features[j].name),
                        )
                    })?)
                } else {
                    Value::Numeric(field.parse().map_err(|_| {
                        ParseError::new(line, feature_cols[j] + 1, format!("`{field}` is not a number"))
                    })?)
                };
            values.push(value);
        }
    }

    Ok(MlDataset::new(DatasetParts {
        name: name.to_string(),
        features,
        label_names: label_names.to_vec(),
        values,
        labels,
        label_positions: None,
        citation: None,
    })?)
}

/// Numeric when every present value parses as a number, otherwise nominal
/// with categories in order of first appearance.
fn infer_kind<'a>(name: &str, column: impl Iterator<Item = &'a str> + Clone) -> AttributeMeta {
    let mut present = column.filter(|s| !is_missing(s));
    if present.clone().all(|s| s.parse::<f64>().is_ok()) {
        return AttributeMeta::numeric(name);
    }
    let mut cats: Vec<&str> = Vec::new();
    for s in present.by_ref() {
        if !cats.contains(&s) {
            cats.push(s);
        }
    }
    AttributeMeta::nominal(name, cats)
}

fn write_record(out: &mut Vec<u8>, fields: &[String]) {
    let mut writer = ::csv::WriterBuilder::new().from_writer(out);
    writer.write_record(fields).expect("writing to memory");
    writer.flush().expect("writing to memory");
}

pub(crate) fn render(ds: &MlDataset) -> String {
    let mut out = Vec::new();
    let header: Vec<String> = ds
        .feature_attributes()
        .iter()
        .map(|a| a.name.clone())
        .chain(ds.label_names().map(String::from))
        .collect();
    write_record(&mut out, &header);
    let mut fields = Vec::with_capacity(header.len());
    for i in 0..ds.num_instances() {
        fields.clear();
        for (j, value) in ds.row(i).iter().enumerate() {
            fields.push(match *value {
                Value::Missing => "?".to_string(),
                Value::Numeric(v) => format_number(v),
                Value::Nominal(c) => {
                    categories(&ds.feature_attributes()[j]).expect("nominal attribute")[c as usize].clone()
                }
            });
        }
        let labelset = ds.labelset(i);
        fields.extend((0..ds.num_labels()).map(|j| if labelset.contains(j) { "1" } else { "0" }.to_string()));
        write_record(&mut out, &fields);
    }
    String::from_utf8(out).expect("csv output is utf-8")
}

pub(crate) fn render_label_names(ds: &MlDataset) -> String {
    let mut out = Vec::new();
    for name in ds.label_names() {
        write_record(&mut out, &[name.to_string()]);
    }
    String::from_utf8(out).expect("csv output is utf-8")
}
