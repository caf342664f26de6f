//! Reader/writer for the standard alist sparse-matrix text format.
//!
//! Layout: `n m` (columns, rows), maximum column/row degrees, per-column and
//! per-row degree lists, then 1-indexed adjacency lists padded with zeros to
//! the maximum degree. The writer emits a canonical form (single spaces,
//! `\n` endings) so that write → read → write is byte-identical.

use std::path::Path;

use crate::dyadic::BinaryMatrix;
use crate::error::{Error, Result};

pub fn to_alist(h: &BinaryMatrix) -> String {
    let cols = h.col_supports();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = (0..h.rows()).map(|i| h.row_weight(i)).max().unwrap_or(0);

    let mut out = String::new();
    out.push_str(&format!("{} {}\n", h.cols(), h.rows()));
    out.push_str(&format!("{max_col} {max_row}\n"));
    push_ints(&mut out, cols.iter().map(|c| c.len()));
    push_ints(&mut out, (0..h.rows()).map(|i| h.row_weight(i)));
    for col in &cols {
        push_padded(&mut out, col, max_col);
    }
    for i in 0..h.rows() {
        push_padded(&mut out, h.row(i), max_row);
    }
    out
}

fn push_ints(out: &mut String, vals: impl Iterator<Item = usize>) {
    let line: Vec<String> = vals.map(|v| v.to_string()).collect();
    out.push_str(&line.join(" "));
    out.push('\n');
}

fn push_padded(out: &mut String, support: &[u32], width: usize) {
    let mut items: Vec<String> = support.iter().map(|&v| (v + 1).to_string()).collect();
    items.resize(width, "0".to_string());
    out.push_str(&items.join(" "));
    out.push('\n');
}

struct Tokens {
    values: Vec<usize>,
    pos: usize,
}

impl Tokens {
    fn parse(text: &str) -> Result<Tokens> {
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::AlistParse(format!("bad integer token {t:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(Tokens { values, pos: 0 })
    }

    fn next(&mut self, what: &str) -> Result<usize> {
        let v = self
            .values
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::AlistParse(format!("missing {what}")))?;
        self.pos += 1;
        Ok(v)
    }

    fn adjacency(&mut self, degs: &[usize], width: usize, limit: usize) -> Result<Vec<Vec<u32>>> {
        let mut lists = Vec::with_capacity(degs.len());
        for (i, &deg) in degs.iter().enumerate() {
            let mut support = Vec::with_capacity(deg);
            for k in 0..width {
                let v = self.next("adjacency entry")?;
                if k < deg {
                    if v == 0 || v > limit {
                        return Err(Error::AlistParse(format!("entry {v} out of range in list {i}")));
                    }
                    support.push((v - 1) as u32);
                } else if v != 0 {
                    return Err(Error::AlistParse("nonzero padding".into()));
                }
            }
            lists.push(support);
        }
        Ok(lists)
    }
}

pub fn from_alist(text: &str) -> Result<BinaryMatrix> {
    let mut tokens = Tokens::parse(text)?;
    let n = tokens.next("column count")?;
    let m = tokens.next("row count")?;
    if n == 0 || m == 0 {
        return Err(Error::AlistParse("empty matrix".into()));
    }
    let max_col = tokens.next("max column degree")?;
    let max_row = tokens.next("max row degree")?;
    let col_degs: Vec<usize> = (0..n).map(|_| tokens.next("column degree")).collect::<Result<_>>()?;
    let row_degs: Vec<usize> = (0..m).map(|_| tokens.next("row degree")).collect::<Result<_>>()?;
    if col_degs.iter().any(|&d| d > max_col) || row_degs.iter().any(|&d| d > max_row) {
        return Err(Error::AlistParse("degree exceeds declared maximum".into()));
    }

    let col_lists = tokens.adjacency(&col_degs, max_col, m)?;
    let mut row_lists = tokens.adjacency(&row_degs, max_row, n)?;
    for row in &mut row_lists {
        row.sort_unstable();
    }
    let h = BinaryMatrix::from_rows(n, row_lists)
        .map_err(|e| Error::AlistParse(format!("inconsistent adjacency: {e}")))?;

    // cross-check the column lists against the row lists
    let mut derived = h.col_supports();
    for col in &mut derived {
        col.sort_unstable();
    }
    let mut given = col_lists;
    for col in &mut given {
        col.sort_unstable();
    }
    if derived != given {
        return Err(Error::AlistParse("row and column adjacency disagree".into()));
    }
    Ok(h)
}

pub fn write_file(h: &BinaryMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, to_alist(h))?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<BinaryMatrix> {
    from_alist(&std::fs::read_to_string(path)?)
}
