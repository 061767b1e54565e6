//! Matrix documents: either plain text (first line `n`, then `n` rows of `n`
//! integers) or JSON `{"n": n, "entries": [[...], ...]}`. Entries too large
//! for `i64` are written as JSON strings and read back from either form.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exact_int::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("empty document")]
    Empty,
    #[error("invalid dimension {0:?}")]
    Dimension(String),
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("not an integer: {0:?}")]
    NotInteger(String),
    #[error("malformed JSON document: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: IntMatrix,
}

impl MatrixDocument {
    pub fn new(entries: IntMatrix) -> Result<Self, DocumentError> {
        if !entries.is_square() {
            return Err(DocumentError::Dimension(format!("{}x{}", entries.rows(), entries.cols())));
        }
        Ok(Self { n: entries.rows(), entries })
    }

    /// Parses either format, choosing JSON when the first non-blank
    /// character is `{`.
    pub fn parse(input: &str) -> Result<Self, DocumentError> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self, DocumentError> {
        let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(DocumentError::Empty)?;
        let n: usize = first.trim().parse().map_err(|_| DocumentError::Dimension(first.trim().to_string()))?;
        if n == 0 {
            return Err(DocumentError::Dimension("0".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (idx, line) in lines {
            let row = parse_integers(line)?;
            if row.len() != n {
                return Err(DocumentError::RowLength { line: idx + 1, expected: n, found: row.len() });
            }
            data.extend(row);
            rows += 1;
        }
        if rows != n {
            return Err(DocumentError::RowCount { expected: n, found: rows });
        }
        Self::new(matrix_from(n, data))
    }

    pub fn parse_json(input: &str) -> Result<Self, DocumentError> {
        let v: Value = serde_json::from_str(input).map_err(|e| DocumentError::Json(e.to_string()))?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| DocumentError::Json("missing nonnegative integer \"n\"".into()))? as usize;
        if n == 0 {
            return Err(DocumentError::Dimension("0".into()));
        }
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| DocumentError::Json("missing array \"entries\"".into()))?;
        if rows.len() != n {
            return Err(DocumentError::RowCount { expected: n, found: rows.len() });
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| DocumentError::Json(format!("row {i} is not an array")))?;
            if row.len() != n {
                return Err(DocumentError::RowLength { line: i + 1, expected: n, found: row.len() });
            }
            for x in row {
                data.push(json_integer(x)?);
            }
        }
        Self::new(matrix_from(n, data))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.entries.to_rows() {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix documents always serialize")
    }
}

fn matrix_from(n: usize, data: Vec<BigInt>) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = data.chunks(n).map(<[BigInt]>::to_vec).collect();
    IntMatrix::try_from_rows(&rows).expect("rows have equal length")
}

fn json_integer(x: &Value) -> Result<BigInt, DocumentError> {
    match x {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = num.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(DocumentError::NotInteger(num.to_string()))
            }
        }
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| DocumentError::NotInteger(s.clone())),
        other => Err(DocumentError::NotInteger(other.to_string())),
    }
}

/// Integers separated by whitespace and/or commas, optionally wrapped in
/// brackets: `2 3`, `2,3`, `[2, 3]`.
pub fn parse_integers(input: &str) -> Result<Vec<BigInt>, DocumentError> {
    let trimmed = input.trim().trim_start_matches('[').trim_end_matches(']');
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| BigInt::from_str(t).map_err(|_| DocumentError::NotInteger(t.to_string())))
        .collect()
}
