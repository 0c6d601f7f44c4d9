//! Plain-text matrix format.
//!
//! One row per line, entries separated by whitespace and/or commas. An
//! optional first line `# rows cols` declares the shape and is checked.
//! Any other line starting with `#` is a comment. Negative and non-finite
//! entries are rejected.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::MaxMatrix;

pub fn parse_matrix<T: Scalar>(text: &str) -> Result<MaxMatrix<T>> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut seen_content = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let line_no = lineno + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if !seen_content && header.is_none() {
                header = parse_header(rest);
            }
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut row = Vec::new();
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("cannot parse {tok:?} as a number"),
            })?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("entry {tok} is not a finite nonnegative real"),
                });
            }
            row.push(T::lit(v));
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::Empty);
    }
    if let Some((r, c)) = header {
        if rows.len() != r || rows[0].len() != c {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "header declares {r}x{c} but body is {}x{}",
                    rows.len(),
                    rows[0].len()
                ),
            });
        }
    }
    MaxMatrix::from_rows(&rows)
}

fn parse_header(rest: &str) -> Option<(usize, usize)> {
    let mut it = rest.split_whitespace();
    let r = it.next()?.parse().ok()?;
    let c = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((r, c))
}

/// Writes `# rows cols` followed by space-separated rows, using the shortest
/// representation that round-trips.
pub fn write_matrix<T: Scalar>(m: &MaxMatrix<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
