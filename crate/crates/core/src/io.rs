//! The `.hmat` text format.
//!
//! ```text
//! 2 4
//! # labels: 1 2 3 4
//! 1 0 1 1
//! 0 1 1 w
//! ```
//!
//! The first non-comment line holds the dimensions. A `# labels:` line may
//! rename the columns; other `#` lines and blank lines are ignored.

use std::fs;
use std::path::Path;

use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::matrix::{Label, MatrixE};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = vec![];
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

pub fn parse_matrix(text: &str) -> Result<MatrixE> {
    let mut dims: Option<(usize, usize)> = None;
    let mut labels: Option<(usize, Vec<Label>)> = None;
    let mut data: Vec<Eisenstein> = vec![];
    let mut rows_seen = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(rest) = comment.trim_start().strip_prefix("labels:") {
                let offset = rest.as_ptr() as usize - raw.as_ptr() as usize;
                let parsed = tokens(rest)
                    .map(|(col, tok)| {
                        tok.parse::<Label>()
                            .map_err(|_| parse_error(line_no, offset + col, format!("bad label {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                labels = Some((line_no, parsed));
            }
            continue;
        }
        let Some((rows, cols)) = dims else {
            let toks: Vec<(usize, &str)> = tokens(raw).collect();
            if toks.len() != 2 {
                return Err(parse_error(line_no, 1, "expected \"rows cols\""));
            }
            let num = |(col, tok): (usize, &str)| {
                tok.parse::<usize>()
                    .map_err(|_| parse_error(line_no, col, format!("bad dimension {tok:?}")))
            };
            dims = Some((num(toks[0])?, num(toks[1])?));
            continue;
        };
        if rows_seen == rows {
            return Err(parse_error(line_no, 1, format!("more than {rows} rows")));
        }
        let mut count = 0;
        for (col, tok) in tokens(raw) {
            let x: Eisenstein = tok
                .parse()
                .map_err(|err: Error| parse_error(line_no, col, err.to_string()))?;
            data.push(x);
            count += 1;
        }
        if count != cols {
            return Err(parse_error(
                line_no,
                1,
                format!("expected {cols} entries, found {count}"),
            ));
        }
        rows_seen += 1;
    }

    let (rows, cols) = dims.ok_or_else(|| parse_error(1, 1, "missing dimension line"))?;
    if rows_seen != rows {
        return Err(parse_error(
            text.lines().count().max(1),
            1,
            format!("expected {rows} rows, found {rows_seen}"),
        ));
    }
    let m = MatrixE::new(rows, cols, data)?;
    match labels {
        Some((line, l)) => {
            if l.len() != cols {
                return Err(parse_error(line, 1, format!("expected {cols} labels, found {}", l.len())));
            }
            m.with_labels(l).map_err(|err| parse_error(line, 1, err.to_string()))
        }
        None => Ok(m),
    }
}

/// Canonical text form; labels are written only when they differ from
/// `1..=n`.
pub fn format_matrix(m: &MatrixE) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    if !m.has_default_labels() {
        let l: Vec<String> = m.labels().iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("# labels: {}\n", l.join(" ")));
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<MatrixE> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|err| Error::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    })?;
    parse_matrix(&text)
}

pub fn write_matrix(m: &MatrixE, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_matrix(m)).map_err(|err| Error::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    })
}
