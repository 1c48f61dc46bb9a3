//! Rack and X-set input files.
//!
//! Text racks are `rack n` followed by `n` rows of `n` integers, row `x`
//! column `y` holding `x ◁ y`. Text X-sets are `xset m n` followed by `m` rows
//! of `n` integers, row `y` column `x` holding `y ∗ x`. Blank lines and lines
//! starting with `#` are ignored. Either may instead be a JSON object
//! `{"size": n, "table": [[..]]}` for a rack or `{"size": m, "act": [[..]]}`
//! for an X-set.

use std::fmt;

use rackcoh::rack::{Rack, RackError, XSet};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{1}: {0}")]
    Rack(#[source] RackError, String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Which table a file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Rack,
    XSet,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Rack => "rack",
            Kind::XSet => "xset",
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRack {
    size: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonXSet {
    size: usize,
    act: Vec<Vec<usize>>,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(line_no: usize, line: &str) -> impl Iterator<Item = Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], line: line_no, column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out.into_iter()
}

/// Parses a text table. Returns the header numbers and the rows.
fn parse_text(path: &str, src: &str, kind: Kind) -> Result<(Vec<usize>, Vec<Vec<usize>>), InputError> {
    let err = |line: usize, column: usize, message: String| InputError::Parse {
        path: path.to_string(),
        line,
        column,
        message,
    };
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(1, 1, format!("empty file, expected `{kind} ...` header")))?;
    let mut htoks = tokens(hline, header);
    let keyword = htoks.next().unwrap();
    if keyword.text != kind.to_string() {
        return Err(err(hline, keyword.column, format!("expected `{kind}`, found `{}`", keyword.text)));
    }
    let expected_dims = if kind == Kind::Rack { 1 } else { 2 };
    let mut dims = Vec::new();
    for t in htoks {
        let v = t.text.parse::<usize>().map_err(|_| err(t.line, t.column, format!("invalid size `{}`", t.text)))?;
        dims.push(v);
    }
    if dims.len() != expected_dims {
        return Err(err(hline, 1, format!("`{kind}` header takes {expected_dims} size(s), found {}", dims.len())));
    }
    let (rows, cols, bound) = match kind {
        Kind::Rack => (dims[0], dims[0], dims[0]),
        Kind::XSet => (dims[0], dims[1], dims[0]),
    };
    if rows == 0 {
        return Err(err(hline, 1, "size must be positive".into()));
    }
    let mut table = Vec::with_capacity(rows);
    let mut last_line = hline;
    for (line_no, line) in lines {
        last_line = line_no;
        if table.len() == rows {
            return Err(err(line_no, 1, format!("extra row; expected {rows} rows")));
        }
        let mut row = Vec::with_capacity(cols);
        for t in tokens(line_no, line) {
            let v = t.text.parse::<usize>().map_err(|_| err(t.line, t.column, format!("invalid entry `{}`", t.text)))?;
            if v >= bound {
                return Err(err(t.line, t.column, format!("entry {v} out of range 0..{bound}")));
            }
            if row.len() == cols {
                return Err(err(t.line, t.column, format!("row has more than {cols} entries")));
            }
            row.push(v);
        }
        if row.len() != cols {
            return Err(err(line_no, line.chars().count() + 1, format!("row has {} entries, expected {cols}", row.len())));
        }
        table.push(row);
    }
    if table.len() != rows {
        return Err(err(last_line + 1, 1, format!("found {} rows, expected {rows}", table.len())));
    }
    Ok((dims, table))
}

fn parse_json(path: &str, src: &str, kind: Kind) -> Result<Vec<Vec<usize>>, InputError> {
    let err = |line: usize, column: usize, message: String| InputError::Parse { path: path.to_string(), line, column, message };
    let syntax = |e: serde_json::Error| err(e.line(), e.column(), e.to_string());
    let (size, table) = match kind {
        Kind::Rack => {
            let r: JsonRack = serde_json::from_str(src).map_err(syntax)?;
            (r.size, r.table)
        }
        Kind::XSet => {
            let y: JsonXSet = serde_json::from_str(src).map_err(syntax)?;
            (y.size, y.act)
        }
    };
    if table.len() != size {
        return Err(err(1, 1, format!("`size` is {size} but the table has {} rows", table.len())));
    }
    Ok(table)
}

fn is_json(src: &str) -> bool {
    src.trim_start().starts_with('{')
}

pub fn parse_rack(path: &str, src: &str) -> Result<Rack, InputError> {
    let table = if is_json(src) { parse_json(path, src, Kind::Rack)? } else { parse_text(path, src, Kind::Rack)?.1 };
    Rack::from_table(&table).map_err(|e| InputError::Rack(e, path.to_string()))
}

pub fn parse_xset(path: &str, src: &str, rack: &Rack) -> Result<XSet, InputError> {
    let table = if is_json(src) {
        parse_json(path, src, Kind::XSet)?
    } else {
        let (dims, table) = parse_text(path, src, Kind::XSet)?;
        if dims[1] != rack.size() {
            return Err(InputError::Parse {
                path: path.to_string(),
                line: 1,
                column: 1,
                message: format!("X-set is over a rack of size {}, input rack has size {}", dims[1], rack.size()),
            });
        }
        table
    };
    XSet::from_table(rack, &table).map_err(|e| InputError::Rack(e, path.to_string()))
}

pub fn read(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_string(), source })
}
