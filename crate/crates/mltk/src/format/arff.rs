//! ARFF lexing, parsing and writing shared by the MULAN, MEKA and KEEL dialects.
//!
//! Keywords are case-insensitive, `%` starts a comment, identifiers may be
//! single- or double-quoted with backslash escapes, and data rows are either
//! dense (`v1,v2,...`) or sparse (`{index value, ...}` with 0-based indices;
//! omitted cells hold zero, or the first category of a nominal attribute).

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt::Write as _;

use mltk_core::{AttributeKind, Column, Labelset, MlDataset, Value};

use super::number::format_number;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
    Comma,
    Open,
    Close,
    LBracket,
    RBracket,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

impl Token {
    /// Text of a word or quoted string.
    fn text(&self) -> Option<&str> {
        match &self.tok {
            Tok::Word(s) | Tok::Quoted(s) => Some(s),
            _ => None,
        }
    }
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            ',' => Some(Tok::Comma),
            '{' => Some(Tok::Open),
            '}' => Some(Tok::Close),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push(Token { tok, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '%' {
            break;
        } else if c == '\'' || c == '"' {
            let mut text = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(ParseError::new(line_no, column, "unterminated quoted string")),
                    Some(&q) if q == c => break,
                    Some('\\') => {
                        let escaped = chars
                            .get(i + 1)
                            .ok_or_else(|| ParseError::new(line_no, i + 1, "dangling escape"))?;
                        text.push(match escaped {
                            'n' => '\n',
                            't' => '\t',
                            'r' => '\r',
                            other => *other,
                        });
                        i += 2;
                    }
                    Some(&other) => {
                        text.push(other);
                        i += 1;
                    }
                }
            }
            i += 1;
            tokens.push(Token {
                tok: Tok::Quoted(text),
                column,
            });
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !",{}[]%".contains(chars[i]) {
                i += 1;
            }
            tokens.push(Token {
                tok: Tok::Word(chars[start..i].iter().collect()),
                column,
            });
        }
    }
    Ok(tokens)
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum AttrType {
    Numeric,
    Nominal(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Attr {
    pub name: String,
    pub kind: AttrType,
    pub line: usize,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Header {
    pub relation: String,
    pub relation_line: usize,
    pub attributes: Vec<Attr>,
    /// KEEL `@inputs` and `@outputs` lists.
    pub inputs: Option<Vec<String>>,
    pub outputs: Option<Vec<String>>,
    pub outputs_line: usize,
    comments: Vec<String>,
    /// 0-based index of the first line after `@data`.
    pub data_start: usize,
}

impl Header {
    /// A BibTeX entry embedded in the header comments, if any.
    pub fn citation(&self) -> Option<String> {
        let start = self.comments.iter().position(|c| {
            let t = c.trim_start();
            t.starts_with('@') && t.contains('{')
        })?;
        let mut depth = 0i64;
        let mut lines = Vec::new();
        for c in &self.comments[start..] {
            lines.push(c.as_str());
            depth += c.matches('{').count() as i64 - c.matches('}').count() as i64;
            if depth <= 0 {
                break;
            }
        }
        Some(lines.join("\n"))
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }
}

fn keyword(tokens: &[Token]) -> Option<String> {
    match tokens.first().map(|t| &t.tok) {
        Some(Tok::Word(w)) if w.starts_with('@') => Some(w.to_ascii_lowercase()),
        _ => None,
    }
}

fn name_list(tokens: &[Token], line: usize) -> Result<Vec<String>, ParseError> {
    let mut names = Vec::new();
    let mut expect_name = true;
    for t in tokens {
        match (&t.tok, expect_name) {
            (Tok::Word(_) | Tok::Quoted(_), true) => {
                names.push(t.text().unwrap().to_string());
                expect_name = false;
            }
            (Tok::Comma, false) => expect_name = true,
            _ => return Err(ParseError::new(line, t.column, "malformed attribute name list")),
        }
    }
    Ok(names)
}

fn attribute(tokens: &[Token], line: usize, line_len: usize) -> Result<Attr, ParseError> {
    let name_tok = tokens
        .get(1)
        .ok_or_else(|| ParseError::new(line, line_len + 1, "attribute name expected"))?;
    let name = name_tok
        .text()
        .ok_or_else(|| ParseError::new(line, name_tok.column, "attribute name expected"))?
        .to_string();
    let type_tok = tokens
        .get(2)
        .ok_or_else(|| ParseError::new(line, line_len + 1, "attribute type expected"))?;
    let kind = match &type_tok.tok {
        Tok::Open => {
            let mut categories = Vec::new();
            let mut expect_value = true;
            let mut closed = false;
            for t in &tokens[3..] {
                match (&t.tok, expect_value) {
                    (Tok::Close, _) => {
                        closed = true;
                        break;
                    }
                    (Tok::Word(_) | Tok::Quoted(_), true) => {
                        categories.push(t.text().unwrap().to_string());
                        expect_value = false;
                    }
                    (Tok::Comma, false) => expect_value = true,
                    _ => return Err(ParseError::new(line, t.column, "malformed nominal specification")),
                }
            }
            if !closed {
                return Err(ParseError::new(
                    line,
                    type_tok.column,
                    "unterminated nominal specification",
                ));
            }
            if categories.is_empty() {
                return Err(ParseError::new(
                    line,
                    type_tok.column,
                    "nominal attribute without categories",
                ));
            }
            AttrType::Nominal(categories)
        }
        Tok::Word(w) => match w.to_ascii_lowercase().as_str() {
            // KEEL appends an optional `[min, max]` range, which carries no information we keep
            "numeric" | "real" | "integer" => AttrType::Numeric,
            "string" | "date" | "relational" => {
                return Err(ParseError::new(
                    line,
                    type_tok.column,
                    format!("unsupported attribute type `{w}`"),
                ))
            }
            _ => {
                return Err(ParseError::new(
                    line,
                    type_tok.column,
                    format!("unknown attribute type `{w}`"),
                ))
            }
        },
        _ => return Err(ParseError::new(line, type_tok.column, "attribute type expected")),
    };
    Ok(Attr { name, kind, line })
}

pub(crate) fn parse_header(text: &str) -> Result<Header, ParseError> {
    let mut header = Header::default();
    let mut seen_relation = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if let Some(comment) = trimmed.strip_prefix('%') {
            let comment = comment.strip_prefix(' ').unwrap_or(comment);
            header.comments.push(comment.trim_end().to_string());
            continue;
        }
        let tokens = tokenize(raw, line)?;
        if tokens.is_empty() {
            continue;
        }
        let Some(kw) = keyword(&tokens) else {
            return Err(ParseError::new(line, tokens[0].column, "expected a header declaration"));
        };
        match kw.as_str() {
            "@relation" => {
                let name = tokens
                    .get(1)
                    .and_then(Token::text)
                    .ok_or_else(|| ParseError::new(line, raw.len() + 1, "relation name expected"))?;
                // unquoted MEKA relations may run on, e.g. `@relation name: -C 6`
                let rest: Vec<&str> = tokens[2..].iter().filter_map(Token::text).collect();
                header.relation = if rest.is_empty() {
                    name.to_string()
                } else {
                    format!("{name} {}", rest.join(" "))
                };
                header.relation_line = line;
                seen_relation = true;
            }
            "@attribute" => {
                let attr = attribute(&tokens, line, raw.len())?;
                if header.position(&attr.name).is_some() {
                    return Err(ParseError::new(
                        line,
                        tokens[1].column,
                        format!("duplicate attribute name `{}`", attr.name),
                    ));
                }
                header.attributes.push(attr);
            }
            "@inputs" | "@input" => header.inputs = Some(name_list(&tokens[1..], line)?),
            "@outputs" | "@output" => {
                header.outputs = Some(name_list(&tokens[1..], line)?);
                header.outputs_line = line;
            }
            "@data" => {
                if !seen_relation {
                    return Err(ParseError::new(line, 1, "@data before @relation"));
                }
                if header.attributes.is_empty() {
                    return Err(ParseError::new(line, 1, "no attributes declared"));
                }
                header.data_start = idx + 1;
                return Ok(header);
            }
            other => {
                return Err(ParseError::new(
                    line,
                    tokens[0].column,
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }
    let last = text.lines().count();
    Err(ParseError::new(last.max(1), 1, "missing @data section"))
}

/// Role of one ARFF column once labels are known.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Feature,
    Label(usize),
}

#[derive(Debug)]
pub(crate) struct Body {
    pub values: Vec<Value>,
    pub labels: Vec<Labelset>,
}

/// Checks that a label attribute is binary and returns, for nominal labels,
/// the index of category `1` (or `None` when the label cannot be relevant).
fn label_categories(attr: &Attr) -> Result<Option<Option<u32>>, ParseError> {
    match &attr.kind {
        AttrType::Numeric => Ok(None),
        AttrType::Nominal(cats) => {
            if cats.iter().any(|c| c != "0" && c != "1") {
                return Err(ParseError::new(
                    attr.line,
                    1,
                    format!("label attribute `{}` is not binary {{0,1}}", attr.name),
                ));
            }
            Ok(Some(cats.iter().position(|c| c == "1").map(|p| p as u32)))
        }
    }
}

pub(crate) fn parse_body(header: &Header, text: &str, is_label: &[bool]) -> Result<Body, ParseError> {
    let attrs = &header.attributes;
    let width = attrs.len();
    let mut slots = Vec::with_capacity(width);
    let mut one_index = Vec::with_capacity(width);
    let mut k = 0;
    for (attr, &label) in attrs.iter().zip(is_label) {
        if label {
            slots.push(Slot::Label(k));
            one_index.push(label_categories(attr)?);
            k += 1;
        } else {
            slots.push(Slot::Feature);
            one_index.push(None);
        }
    }
    let lookups: Vec<Option<HashMap<&str, u32>>> = attrs
        .iter()
        .map(|a| match &a.kind {
            AttrType::Nominal(cats) => Some(cats.iter().enumerate().map(|(i, c)| (c.as_str(), i as u32)).collect()),
            AttrType::Numeric => None,
        })
        .collect();

    let cell = |col: usize, tok: &Token, line: usize| -> Result<Value, ParseError> {
        let text = tok
            .text()
            .ok_or_else(|| ParseError::new(line, tok.column, "value expected"))?;
        if matches!(tok.tok, Tok::Word(_)) && (text == "?" || text == "<null>") {
            return Ok(Value::Missing);
        }
        match &lookups[col] {
            Some(map) => map.get(text).map(|&i| Value::Nominal(i)).ok_or_else(|| {
                ParseError::new(
                    line,
                    tok.column,
                    format!("`{text}` is not a category of attribute `{}`", attrs[col].name),
                )
            }),
            None => text
                .trim()
                .parse::<f64>()
                .map(Value::Numeric)
                .map_err(|_| ParseError::new(line, tok.column, format!("`{text}` is not a number"))),
        }
    };

    let mut body = Body {
        values: Vec::new(),
        labels: Vec::new(),
    };
    let mut row = vec![Value::Missing; width];
    let mut given = vec![false; width];
    let mut columns = vec![1; width];

    for (idx, raw) in text.lines().enumerate().skip(header.data_start) {
        let line = idx + 1;
        let tokens = tokenize(raw, line)?;
        if tokens.is_empty() {
            continue;
        }
        let end_column = raw.chars().count() + 1;
        columns.iter_mut().for_each(|c| *c = tokens[0].column);
        if tokens[0].tok == Tok::Open {
            for (col, attr) in attrs.iter().enumerate() {
                row[col] = match attr.kind {
                    AttrType::Numeric => Value::Numeric(0.0),
                    AttrType::Nominal(_) => Value::Nominal(0),
                };
            }
            given.iter_mut().for_each(|g| *g = false);
            let mut i = 1;
            loop {
                let tok = tokens
                    .get(i)
                    .ok_or_else(|| ParseError::new(line, end_column, "unterminated sparse row"))?;
                if tok.tok == Tok::Close {
                    if let Some(extra) = tokens.get(i + 1) {
                        return Err(ParseError::new(line, extra.column, "unexpected text after sparse row"));
                    }
                    break;
                }
                let index: usize = match &tok.tok {
                    Tok::Word(w) => w
                        .parse()
                        .map_err(|_| ParseError::new(line, tok.column, format!("`{w}` is not a column index")))?,
                    _ => return Err(ParseError::new(line, tok.column, "column index expected")),
                };
                if index >= width {
                    return Err(ParseError::new(
                        line,
                        tok.column,
                        format!("sparse index {index} out of range (only {width} attributes)"),
                    ));
                }
                if given[index] {
                    return Err(ParseError::new(
                        line,
                        tok.column,
                        format!("sparse index {index} repeated"),
                    ));
                }
                let value_tok = tokens
                    .get(i + 1)
                    .ok_or_else(|| ParseError::new(line, end_column, "value expected"))?;
                row[index] = cell(index, value_tok, line)?;
                columns[index] = value_tok.column;
                given[index] = true;
                match tokens.get(i + 2).map(|t| &t.tok) {
                    Some(Tok::Comma) => i += 3,
                    Some(Tok::Close) => i += 2,
                    Some(_) => return Err(ParseError::new(line, tokens[i + 2].column, "`,` or `}` expected")),
                    None => return Err(ParseError::new(line, end_column, "unterminated sparse row")),
                }
            }
            store_row(&mut body, &row, &slots, &one_index, &columns, line, k)?;
        } else {
            let mut col = 0;
            let mut expect_value = true;
            for tok in &tokens {
                if expect_value {
                    if col >= width {
                        return Err(ParseError::new(
                            line,
                            tok.column,
                            format!("too many values (expected {width})"),
                        ));
                    }
                    row[col] = cell(col, tok, line)?;
                    columns[col] = tok.column;
                    col += 1;
                    expect_value = false;
                } else if tok.tok == Tok::Comma {
                    expect_value = true;
                } else {
                    return Err(ParseError::new(line, tok.column, "`,` expected"));
                }
            }
            if expect_value || col != width {
                return Err(ParseError::new(
                    line,
                    end_column,
                    format!("expected {width} values, found {col}"),
                ));
            }
            store_row(&mut body, &row, &slots, &one_index, &columns, line, k)?;
        }
    }
    Ok(body)
}

fn store_row(
    body: &mut Body,
    row: &[Value],
    slots: &[Slot],
    one_index: &[Option<Option<u32>>],
    columns: &[usize],
    line: usize,
    k: usize,
) -> Result<(), ParseError> {
    let mut labelset = Labelset::empty(k);
    for (col, (&value, slot)) in row.iter().zip(slots).enumerate() {
        match *slot {
            Slot::Feature => body.values.push(value),
            Slot::Label(j) => {
                let relevant = match (value, one_index[col]) {
                    (Value::Missing, _) => return Err(ParseError::new(line, columns[col], "missing label value")),
                    (Value::Nominal(i), Some(one)) => Some(i) == one,
                    (Value::Numeric(v), None) if v == 0.0 || v == 1.0 => v == 1.0,
                    (Value::Numeric(v), _) => {
                        return Err(ParseError::new(
                            line,
                            columns[col],
                            format!("label value {v} outside {{0,1}}"),
                        ))
                    }
                    (Value::Nominal(_), None) => unreachable!("nominal label without category check"),
                };
                if relevant {
                    labelset.insert(j);
                }
            }
        }
    }
    body.labels.push(labelset);
    Ok(())
}

/// Quotes `s` when it would not survive as a bare ARFF token.
pub(crate) fn quote(s: &str) -> Cow<'_, str> {
    let bare = !s.is_empty()
        && s != "?"
        && !s.starts_with('@')
        && !s.chars().any(|c| c.is_whitespace() || ",{}[]%'\"\\".contains(c));
    if bare {
        return Cow::Borrowed(s);
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        match c {
            '\'' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out.push('\'');
    Cow::Owned(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flavor {
    Weka,
    /// Adds numeric ranges and the `@inputs` / `@outputs` lines.
    Keel,
}

fn feature_text(ds: &MlDataset, feature: usize, value: Value) -> Cow<'_, str> {
    match value {
        Value::Missing => Cow::Borrowed("?"),
        Value::Numeric(v) => Cow::Owned(format_number(v)),
        Value::Nominal(i) => match &ds.feature_attributes()[feature].kind {
            AttributeKind::Nominal { categories } => quote(&categories[i as usize]),
            _ => unreachable!("nominal value in a non-nominal attribute"),
        },
    }
}

fn numeric_range(ds: &MlDataset, feature: usize) -> Option<(f64, f64)> {
    let f = ds.num_features();
    ds.values()
        .iter()
        .skip(feature)
        .step_by(f)
        .filter_map(|v| match v {
            Value::Numeric(x) if x.is_finite() => Some(*x),
            _ => None,
        })
        .fold(None, |acc, x| match acc {
            None => Some((x, x)),
            Some((lo, hi)) => Some((lo.min(x), hi.max(x))),
        })
}

/// Renders an ARFF document with columns in the given order.
pub(crate) fn render(ds: &MlDataset, relation: &str, order: &[Column], flavor: Flavor, sparse: bool) -> String {
    let mut out = String::new();
    if let Some(citation) = ds.citation() {
        for line in citation.lines() {
            let _ = writeln!(out, "% {line}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "@relation {}\n", quote(relation));
    for column in order {
        match *column {
            Column::Feature(j) => {
                let attr = &ds.feature_attributes()[j];
                let _ = write!(out, "@attribute {} ", quote(&attr.name));
                match &attr.kind {
                    AttributeKind::Nominal { categories } => {
                        let cats: Vec<Cow<str>> = categories.iter().map(|c| quote(c)).collect();
                        let _ = writeln!(out, "{{{}}}", cats.join(","));
                    }
                    _ if flavor == Flavor::Keel => match numeric_range(ds, j) {
                        Some((lo, hi)) => {
                            let _ = writeln!(out, "real [{}, {}]", format_number(lo), format_number(hi));
                        }
                        None => out.push_str("real\n"),
                    },
                    _ => out.push_str("numeric\n"),
                }
            }
            Column::Label(j) => {
                let _ = writeln!(out, "@attribute {} {{0,1}}", quote(ds.label_name(j)));
            }
        }
    }
    if flavor == Flavor::Keel {
        let inputs: Vec<Cow<str>> = ds.feature_attributes().iter().map(|a| quote(&a.name)).collect();
        let outputs: Vec<Cow<str>> = ds.label_names().map(quote).collect();
        let _ = writeln!(out, "@inputs {}", inputs.join(", "));
        let _ = writeln!(out, "@outputs {}", outputs.join(", "));
    }
    out.push_str("\n@data\n");

    for i in 0..ds.num_instances() {
        let row = ds.row(i);
        let labelset = ds.labelset(i);
        if sparse {
            out.push('{');
            let mut first = true;
            for (pos, column) in order.iter().enumerate() {
                let text = match *column {
                    Column::Feature(j) if !row[j].is_zero() => feature_text(ds, j, row[j]),
                    Column::Label(j) if labelset.contains(j) => Cow::Borrowed("1"),
                    _ => continue,
                };
                if !first {
                    out.push(',');
                }
                first = false;
                let _ = write!(out, "{pos} {text}");
            }
            out.push_str("}\n");
        } else {
            for (pos, column) in order.iter().enumerate() {
                if pos > 0 {
                    out.push(',');
                }
                match *column {
                    Column::Feature(j) => out.push_str(&feature_text(ds, j, row[j])),
                    Column::Label(j) => out.push(if labelset.contains(j) { '1' } else { '0' }),
                }
            }
            out.push('\n');
        }
    }
    out
}
