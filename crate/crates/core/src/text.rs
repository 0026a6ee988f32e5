//! Plain-text formats.
//!
//! * matrix: one line per row of `0`/`1`, optionally separated by single
//!   spaces; blank lines and `#` comments are skipped; written space-free.
//! * margins: `R: a b c ...` and `S: a b c ...`.
//! * ranked essential set: one `i j r` triple per line, written sorted by `(i, j)`.
//! * matrix list: `count: N`, then the matrices separated by blank lines.

use std::str::FromStr;

use crate::diagram::{RankedEntry, RankedEssentialSet};
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, MarginPair, Position};

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn parse_bit_row(line_no: usize, line: &str) -> Result<Vec<bool>> {
    let bit = |ch: char| match ch {
        '0' => Ok(false),
        '1' => Ok(true),
        _ => Err(Error::NonBinaryChar { line: line_no, ch }),
    };
    if !line.contains(' ') {
        return line.chars().map(bit).collect();
    }
    line.split(' ')
        .map(|tok| {
            let mut chars = tok.chars();
            match (chars.next(), chars.next()) {
                (Some(ch), None) => bit(ch),
                (None, _) => Err(Error::Parse {
                    line: line_no,
                    message: "entries must be separated by single spaces".into(),
                }),
                (Some(_), Some(_)) => Err(Error::Parse {
                    line: line_no,
                    message: format!("entry `{tok}` is not a single digit"),
                }),
            }
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (line_no, line) in content_lines(text) {
        let row = parse_bit_row(line_no, line)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::RaggedRows {
                    line: line_no,
                    expected: first.len(),
                    got: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "no matrix rows found".into(),
        });
    }
    BinaryMatrix::from_rows(&rows)
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

pub fn write_matrix(a: &BinaryMatrix) -> String {
    a.to_string()
}

fn parse_numbers(line_no: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{tok}` is not a nonnegative integer"),
            })
        })
        .collect()
}

pub fn parse_margins(text: &str) -> Result<MarginPair> {
    let mut rows = None;
    let mut cols = None;
    let mut last_line = 1;
    for (line_no, line) in content_lines(text) {
        last_line = line_no;
        let Some((key, rest)) = line.split_once(':') else {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `R: ...` or `S: ...`".into(),
            });
        };
        let slot = match key.trim() {
            "R" => &mut rows,
            "S" => &mut cols,
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key `{other}`"),
                })
            }
        };
        if slot.is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("`{}` given twice", key.trim()),
            });
        }
        *slot = Some(parse_numbers(line_no, rest)?);
    }
    match (rows, cols) {
        (Some(r), Some(s)) => Ok(MarginPair::new(r, s)),
        _ => Err(Error::Parse {
            line: last_line,
            message: "both `R:` and `S:` lines are required".into(),
        }),
    }
}

impl FromStr for MarginPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_margins(s)
    }
}

pub fn write_margins(m: &MarginPair) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    format!("R: {}\nS: {}\n", join(&m.row_sums), join(&m.col_sums))
}

pub fn parse_res(text: &str) -> Result<RankedEssentialSet> {
    let mut out = RankedEssentialSet::new();
    for (line_no, line) in content_lines(text) {
        let nums = parse_numbers(line_no, line)?;
        let [row, col, rank] = nums[..] else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `i j r`, found {} numbers", nums.len()),
            });
        };
        if row == 0 || col == 0 {
            return Err(Error::Parse {
                line: line_no,
                message: "positions are 1-based".into(),
            });
        }
        out.insert(RankedEntry {
            position: Position::new(row, col),
            rank,
        })
        .map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
    }
    Ok(out)
}

impl FromStr for RankedEssentialSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_res(s)
    }
}

pub fn write_res(res: &RankedEssentialSet) -> String {
    res.iter()
        .map(|e| format!("{} {} {}\n", e.position.row, e.position.col, e.rank))
        .collect()
}

pub fn write_matrix_list(list: &[BinaryMatrix]) -> String {
    let mut out = format!("count: {}\n", list.len());
    for a in list {
        out.push('\n');
        out.push_str(&a.to_string());
    }
    out
}

/// Reads the output of [`write_matrix_list`].
pub fn parse_matrix_list(text: &str) -> Result<Vec<BinaryMatrix>> {
    let mut blocks: Vec<(usize, String)> = Vec::new();
    let mut expected = None;
    let mut current = String::new();
    let mut start = 0;
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("count:") {
            expected = Some(rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: "bad count".into(),
            })?);
            continue;
        }
        if trimmed.is_empty() {
            if !current.is_empty() {
                blocks.push((start, std::mem::take(&mut current)));
            }
            continue;
        }
        if current.is_empty() {
            start = line_no;
        }
        current.push_str(line);
        current.push('\n');
    }
    if !current.is_empty() {
        blocks.push((start, current));
    }
    let list = blocks
        .into_iter()
        .map(|(offset, block)| parse_matrix(&block).map_err(|e| shift_line(e, offset - 1)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = expected {
        if n != list.len() {
            return Err(Error::Parse {
                line: 1,
                message: format!("count says {n} but {} matrices follow", list.len()),
            });
        }
    }
    Ok(list)
}

fn shift_line(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line: line + by,
            message,
        },
        Error::RaggedRows {
            line,
            expected,
            got,
        } => Error::RaggedRows {
            line: line + by,
            expected,
            got,
        },
        Error::NonBinaryChar { line, ch } => Error::NonBinaryChar {
            line: line + by,
            ch,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matrix_formats() {
        assert_eq!(parse_matrix("10\n01\n").unwrap(), BinaryMatrix::identity(2));
        assert_eq!(parse_matrix("1 0\n0 1").unwrap(), BinaryMatrix::identity(2));
        assert_eq!(
            parse_matrix("# identity\n\n10\n\n01\n").unwrap(),
            BinaryMatrix::identity(2)
        );
        assert_eq!(write_matrix(&BinaryMatrix::identity(2)), "10\n01\n");
    }

    #[test]
    fn matrix_errors_carry_lines() {
        assert_eq!(
            parse_matrix("10\n011\n"),
            Err(Error::RaggedRows {
                line: 2,
                expected: 2,
                got: 3
            })
        );
        assert_eq!(
            parse_matrix("10\n0x\n"),
            Err(Error::NonBinaryChar { line: 2, ch: 'x' })
        );
        assert!(matches!(
            parse_matrix("1  0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("# nothing\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn margins_format() {
        let m = parse_margins("R: 2 2 1\nS: 2 2 1\n").unwrap();
        assert_eq!(m, MarginPair::new(vec![2, 2, 1], vec![2, 2, 1]));
        assert_eq!(write_margins(&m), "R: 2 2 1\nS: 2 2 1\n");
        assert_eq!(
            parse_margins("S: 1\nR: 1\n").unwrap(),
            MarginPair::new(vec![1], vec![1])
        );
        assert!(matches!(parse_margins("R: 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_margins("R: 1\nT: 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_margins("R: 1 -2\nS: 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn res_format() {
        let res = parse_res("3 2 0\n4 1 0\n").unwrap();
        assert_eq!(
            res,
            RankedEssentialSet::from_triples(&[(3, 2, 0), (4, 1, 0)]).unwrap()
        );
        let unordered = parse_res("# comment\n4 1 0\n3 2 0\n").unwrap();
        assert_eq!(write_res(&unordered), "3 2 0\n4 1 0\n");
        assert!(matches!(
            parse_res("3 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_res("3 2 0\n3 2 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_res("").unwrap().is_empty());
    }

    #[test]
    fn matrix_list_format() {
        let list = vec![BinaryMatrix::identity(2), BinaryMatrix::ones(2, 2)];
        let text = write_matrix_list(&list);
        assert_eq!(text, "count: 2\n\n10\n01\n\n11\n11\n");
        assert_eq!(parse_matrix_list(&text).unwrap(), list);
        assert_eq!(write_matrix_list(&[]), "count: 0\n");
        assert!(parse_matrix_list("count: 3\n\n1\n").is_err());
        assert_eq!(
            parse_matrix_list("count: 1\n\n10\n2x\n"),
            Err(Error::NonBinaryChar { line: 4, ch: '2' })
        );
    }

    fn any_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(m, n)| {
            proptest::collection::vec(any::<bool>(), m * n)
                .prop_map(move |cells| BinaryMatrix::new(m, n, cells).unwrap())
        })
    }

    proptest! {
        #[test]
        fn canonical_text_roundtrips(a in any_matrix()) {
            prop_assert_eq!(parse_matrix(&write_matrix(&a)).unwrap(), a);
        }

        #[test]
        fn margins_text_roundtrips(r in proptest::collection::vec(0usize..9, 1..6),
                                   s in proptest::collection::vec(0usize..9, 1..6)) {
            let m = MarginPair::new(r, s);
            prop_assert_eq!(parse_margins(&write_margins(&m)).unwrap(), m);
        }
    }
}
