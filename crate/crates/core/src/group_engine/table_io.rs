//! Plain-text Cayley tables.
//!
//! ```text
//! # comment lines start with '#'
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! The first data line is the order `m`; the next `m` lines are the rows,
//! `m` space-separated 0-based indices each. Element 0 must be the identity.
//! Blank lines and trailing whitespace are ignored.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{CayleyGroup, GroupError};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> TableError {
    TableError::Parse { line, column, message: message.into() }
}

/// Tokens of a line with their 1-based columns.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - text.as_ptr() as usize;
        (text[..offset].chars().count() + 1, tok)
    })
}

/// Read and validate a table. The group is named `"table"`; rename it with
/// [`CayleyGroup::with_name`].
pub fn load_cayley_table<R: BufRead>(source: R) -> Result<CayleyGroup, TableError> {
    let mut order: Option<usize> = None;
    let mut table: Vec<u64> = Vec::new();
    let mut rows = 0;
    let mut last_line = 0;

    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line?;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(m) = order else {
            let mut toks = tokens(&line);
            let (col, tok) = toks.next().expect("nonblank line");
            let m: usize =
                tok.parse().map_err(|_| parse_err(line_no, col, format!("expected the group order, found {tok:?}")))?;
            if m == 0 {
                return Err(parse_err(line_no, col, "group order must be positive"));
            }
            if let Some((col, tok)) = toks.next() {
                return Err(parse_err(line_no, col, format!("unexpected {tok:?} after the group order")));
            }
            if m > super::order_cap() {
                return Err(GroupError::CapExceeded { order: m.to_string(), cap: super::order_cap() }.into());
            }
            order = Some(m);
            table.reserve(m * m);
            continue;
        };
        if rows == m {
            return Err(parse_err(line_no, 1, format!("extra row; the table has only {m} rows")));
        }
        let mut count = 0;
        for (col, tok) in tokens(&line) {
            if count == m {
                return Err(parse_err(line_no, col, format!("row has more than {m} entries")));
            }
            let v: u64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, col, format!("expected an element index, found {tok:?}")))?;
            table.push(v);
            count += 1;
        }
        if count < m {
            return Err(parse_err(
                line_no,
                line.trim_end().chars().count() + 1,
                format!("row has {count} entries, expected {m}"),
            ));
        }
        rows += 1;
    }

    let Some(m) = order else {
        return Err(parse_err(last_line.max(1), 1, "missing group order"));
    };
    if rows < m {
        return Err(parse_err(last_line + 1, 1, format!("expected {m} rows, found {rows}")));
    }
    Ok(CayleyGroup::from_table("table", m, table)?)
}

pub fn write_cayley_table<W: Write>(g: &CayleyGroup, mut out: W) -> io::Result<()> {
    writeln!(out, "# {}", g.name())?;
    writeln!(out, "{}", g.order())?;
    for x in 0..g.order() as u32 {
        let row: Vec<String> = g.row(x).iter().map(u32::to_string).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{make_symmetric, Violation};
    use super::*;

    fn load(text: &str) -> Result<CayleyGroup, TableError> {
        load_cayley_table(text.as_bytes())
    }

    #[test]
    fn order_two() {
        let g = load("# Z_2\n2\n0 1  \n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_cyclic());
    }

    #[test]
    fn roundtrip_s3() {
        let s3 = make_symmetric(3).unwrap();
        let mut buf = Vec::new();
        write_cayley_table(&s3, &mut buf).unwrap();
        let back = load(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.exponent(), 6);
        assert_eq!(back.with_name("S_3"), s3);
    }

    #[test]
    fn broken_associativity_names_a_triple() {
        let text = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        let err = load(text).unwrap_err();
        let TableError::Group(GroupError::Axioms(v)) = &err else { panic!("{err}") };
        assert!(matches!(v[0], Violation::NotAssociative { .. }));
        assert!(err.to_string().contains(") * "));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match load("2\n0 1\n1 x\n").unwrap_err() {
            TableError::Parse { line, column, .. } => assert_eq!((line, column), (3, 3)),
            e => panic!("{e}"),
        }
        match load("#c\n\n2\n0 1\n").unwrap_err() {
            TableError::Parse { line, .. } => assert_eq!(line, 5),
            e => panic!("{e}"),
        }
        match load("2\n0 1 1\n1 0\n").unwrap_err() {
            TableError::Parse { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("{e}"),
        }
        assert!(matches!(load(""), Err(TableError::Parse { .. })));
        assert!(matches!(load("two\n"), Err(TableError::Parse { line: 1, column: 1, .. })));
        assert!(matches!(load("1\n0\n0\n"), Err(TableError::Parse { line: 3, .. })));
    }

    #[test]
    fn out_of_range_entries_are_axiom_violations() {
        let err = load("2\n0 1\n1 5\n").unwrap_err();
        assert!(matches!(err, TableError::Group(GroupError::Axioms(_))));
    }
}
