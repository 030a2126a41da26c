//! Prediction files for evaluation: a CSV with a header naming the columns
//! `truth_1..truth_k`, optionally `pred_1..pred_k` and `score_1..score_k`.

use std::collections::HashMap;
use std::path::Path;

use mltk_core::{Labelset, PredictionSet};

use crate::error::{Error, ParseError, Result};

fn column_groups(header: &csv::StringRecord) -> std::result::Result<HashMap<&str, Vec<usize>>, ParseError> {
    let mut groups: HashMap<&str, Vec<(usize, usize)>> = HashMap::new();
    for (col, name) in header.iter().enumerate() {
        let (prefix, index) = name
            .rsplit_once('_')
            .and_then(|(p, i)| Some((p, i.parse::<usize>().ok()?)))
            .filter(|(p, i)| ["truth", "pred", "score"].contains(p) && *i >= 1)
            .ok_or_else(|| ParseError::new(1, col + 1, format!("unexpected column `{name}`")))?;
        groups.entry(prefix).or_default().push((index, col));
    }
    let mut out = HashMap::new();
    for (prefix, mut cols) in groups {
        cols.sort_unstable();
        if cols.iter().enumerate().any(|(j, &(index, _))| index != j + 1) {
            return Err(ParseError::new(
                1,
                1,
                format!("`{prefix}_` columns must be numbered 1..k"),
            ));
        }
        out.insert(prefix, cols.into_iter().map(|(_, c)| c).collect());
    }
    Ok(out)
}

pub fn parse_predictions(text: &str) -> std::result::Result<PredictionSet, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let parse_err = |e: ParseError| Error::parse("<predictions>", e);
    let header = reader
        .headers()
        .map_err(|e| parse_err(ParseError::new(1, 1, e.to_string())))?
        .clone();
    let groups = column_groups(&header).map_err(parse_err)?;
    let truth_cols = groups
        .get("truth")
        .ok_or_else(|| parse_err(ParseError::new(1, 1, "no truth_ columns")))?;
    let k = truth_cols.len();
    for (prefix, cols) in &groups {
        if cols.len() != k {
            return Err(parse_err(ParseError::new(
                1,
                1,
                format!("{} `{prefix}_` columns for {k} labels", cols.len()),
            )));
        }
    }

    let mut truth = Vec::new();
    let mut pred = groups.get("pred").map(|_| Vec::new());
    let mut scores = groups.get("score").map(|_| Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(1, |p| p.line() as usize);
            parse_err(ParseError::new(line, 1, e.to_string()))
        })?;
        let line = record.position().map_or(1, |p| p.line() as usize);
        let bits = |cols: &[usize]| -> std::result::Result<Labelset, ParseError> {
            let mut set = Labelset::empty(k);
            for (j, &c) in cols.iter().enumerate() {
                match &record[c] {
                    "1" => set.insert(j),
                    "0" => {}
                    other => return Err(ParseError::new(line, c + 1, format!("`{other}` is not 0 or 1"))),
                }
            }
            Ok(set)
        };
        truth.push(bits(truth_cols).map_err(parse_err)?);
        if let Some(pred) = &mut pred {
            pred.push(bits(&groups["pred"]).map_err(parse_err)?);
        }
        if let Some(scores) = &mut scores {
            let row = groups["score"]
                .iter()
                .map(|&c| {
                    record[c]
                        .parse::<f64>()
                        .map_err(|_| ParseError::new(line, c + 1, format!("`{}` is not a number", &record[c])))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(parse_err)?;
            scores.push(row);
        }
    }
    Ok(PredictionSet::new(truth, pred, scores)?)
}

pub fn read_predictions(path: &Path) -> Result<PredictionSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_predictions(&text).map_err(|e| match e {
        Error::Parse { error, .. } => Error::parse(path, error),
        other => other,
    })
}
