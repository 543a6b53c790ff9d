//! Matrix input files.
//!
//! Two encodings are accepted. A JSON document
//!
//! ```json
//! { "n": 2, "entries": [[2, 1], [1, [2, 0.5]]], "rhs": [3, 3] }
//! ```
//!
//! with `entries` row-major, either flat (`n²` items) or nested (`n` rows),
//! each number real or a `[re, im]` pair. Or plain text: one row per line,
//! numbers separated by whitespace, commas or semicolons, `#` comments. An
//! extra trailing column is read as the right-hand side.

use std::fmt;
use std::path::Path;

use serde_json::Value;

use crate::linalg::{Matrix, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub matrix: Matrix,
    pub rhs: Option<Vec<Scalar>>,
}

/// Input error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::at(0, 0, format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_file(&text)
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_delimited(text)
    }
}

/// Position of the first occurrence of `"key"`, or the document start.
fn key_position(text: &str, key: &str) -> (usize, usize) {
    let needle = format!("\"{key}\"");
    match text.find(&needle) {
        Some(offset) => {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

fn scalar(v: &Value) -> Option<Scalar> {
    match v {
        Value::Number(x) => x.as_f64().map(|re| Scalar::new(re, 0.0)),
        Value::Array(pair) if pair.len() == 2 => {
            Some(Scalar::new(pair[0].as_f64()?, pair[1].as_f64()?))
        }
        _ => None,
    }
}

fn scalars(items: &[Value]) -> Option<Vec<Scalar>> {
    items.iter().map(scalar).collect()
}

fn parse_json(text: &str) -> Result<MatrixFile, ParseError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| ParseError::at(e.line(), e.column(), e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| ParseError::at(1, 1, "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "n" | "entries" | "rhs")) {
        let (l, c) = key_position(text, k);
        return Err(ParseError::at(l, c, format!("unknown field `{k}`")));
    }
    let err = |key: &str, msg: String| {
        let (l, c) = key_position(text, key);
        ParseError::at(l, c, msg)
    };
    let n = obj
        .get("n")
        .ok_or_else(|| err("n", "missing field `n`".into()))?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| err("n", "`n` must be a positive integer".into()))? as usize;
    let items = obj
        .get("entries")
        .ok_or_else(|| err("entries", "missing field `entries`".into()))?
        .as_array()
        .ok_or_else(|| err("entries", "`entries` must be an array".into()))?;

    let flat = (items.len() == n * n).then(|| scalars(items)).flatten();
    let nested = || -> Option<Vec<Scalar>> {
        if items.len() != n {
            return None;
        }
        let mut out = Vec::with_capacity(n * n);
        for row in items {
            let row = row.as_array().filter(|r| r.len() == n)?;
            out.extend(scalars(row)?);
        }
        Some(out)
    };
    let entries = flat.or_else(nested).ok_or_else(|| {
        err(
            "entries",
            format!(
                "`entries` must hold {} numbers or {n} rows of {n}; numbers are reals or [re, im]",
                n * n
            ),
        )
    })?;
    let matrix = Matrix::new(n, entries).map_err(|e| err("entries", e.to_string()))?;

    let rhs = match obj.get("rhs") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let r = v
                .as_array()
                .and_then(|a| scalars(a))
                .ok_or_else(|| err("rhs", "`rhs` must be an array of numbers or [re, im]".into()))?;
            if r.len() != n {
                return Err(err("rhs", format!("`rhs` has {} entries, expected {n}", r.len())));
            }
            if let Some(i) = r.iter().position(|z| !z.is_finite()) {
                return Err(err("rhs", format!("non-finite rhs entry {i}")));
            }
            Some(r)
        }
    };
    Ok(MatrixFile { matrix, rhs })
}

fn parse_delimited(text: &str) -> Result<MatrixFile, ParseError> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut start = None;
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        for (pos, &(byte, ch)) in chars.iter().enumerate() {
            let sep = ch.is_whitespace() || ch == ',' || ch == ';';
            match (sep, start) {
                (false, None) => start = Some((pos, byte)),
                (true, Some((col, b))) => {
                    row.push(number(&content[b..byte], line, col + 1)?);
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((col, b)) = start {
            row.push(number(&content[b..], line, col + 1)?);
        }
        if !row.is_empty() {
            rows.push((line, row));
        }
    }
    let n = rows.len();
    if n == 0 {
        return Err(ParseError::at(1, 1, "no matrix rows found"));
    }
    let width = rows[0].1.len();
    if width != n && width != n + 1 {
        return Err(ParseError::at(
            rows[0].0,
            1,
            format!("{n} rows need {n} columns (or {} with a right-hand side), found {width}", n + 1),
        ));
    }
    if let Some((line, r)) = rows.iter().find(|(_, r)| r.len() != width) {
        return Err(ParseError::at(
            *line,
            1,
            format!("expected {width} columns, found {}", r.len()),
        ));
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut rhs = Vec::new();
    for (_, r) in &rows {
        entries.extend(r[..n].iter().map(|&x| Scalar::new(x, 0.0)));
        if width > n {
            rhs.push(Scalar::new(r[n], 0.0));
        }
    }
    let matrix = Matrix::new(n, entries).map_err(|e| ParseError::at(rows[0].0, 1, e.to_string()))?;
    Ok(MatrixFile {
        matrix,
        rhs: (width > n).then_some(rhs),
    })
}

fn number(token: &str, line: usize, column: usize) -> Result<f64, ParseError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ParseError::at(line, column, format!("invalid number `{token}`")))
}
