//! alist text format for sparse binary matrices.
//!
//! Line 1 `n m` (columns, rows), line 2 the maximum column and row degree, then the
//! column degrees, the row degrees, one line of 1-based row indices per column and one
//! line of 1-based column indices per row, each padded with zeros to the maximum degree.

use std::fmt::Write;

use anyhow::{bail, ensure, Context, Result};
use qcgr_core::{BinaryMatrix, BitVec};

pub fn to_alist(h: &BinaryMatrix) -> String {
    let (m, n) = (h.rows(), h.cols());
    let t = h.transpose();
    let cols: Vec<Vec<usize>> = (0..n).map(|c| t.row(c).iter_ones().collect()).collect();
    let rows: Vec<Vec<usize>> = (0..m).map(|r| h.row(r).iter_ones().collect()).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut s = String::new();
    let _ = writeln!(s, "{n} {m}");
    let _ = writeln!(s, "{max_col} {max_row}");
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "{}", join(&mut cols.iter().map(Vec::len)));
    let _ = writeln!(s, "{}", join(&mut rows.iter().map(Vec::len)));
    for (list, width) in cols.iter().map(|c| (c, max_col)).chain(rows.iter().map(|r| (r, max_row))) {
        // an all-zero line keeps empty lists visible
        let padded = list.iter().map(|&i| i + 1).chain(std::iter::repeat(0)).take(width.max(1));
        let _ = writeln!(s, "{}", join(&mut padded.into_iter()));
    }
    s
}

pub fn from_alist(text: &str) -> Result<BinaryMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut numbers = |what: &str| -> Result<Vec<usize>> {
        let line = lines.next().with_context(|| format!("alist ends before {what}"))?;
        line.split_whitespace().map(|t| t.parse::<usize>().with_context(|| format!("bad number {t:?} in {what}"))).collect()
    };
    let dims = numbers("the size line")?;
    ensure!(dims.len() == 2, "size line needs two numbers");
    let (n, m) = (dims[0], dims[1]);
    let maxes = numbers("the degree bounds")?;
    ensure!(maxes.len() == 2, "degree line needs two numbers");
    // an empty dimension leaves an empty (skipped) degree line
    let col_deg = if n == 0 { Vec::new() } else { numbers("column degrees")? };
    let row_deg = if m == 0 { Vec::new() } else { numbers("row degrees")? };
    ensure!(col_deg.len() == n && row_deg.len() == m, "degree lists do not match the size line");
    let mut rows = vec![BitVec::zeros(n); m];
    for (c, &deg) in col_deg.iter().enumerate() {
        let entries: Vec<usize> = numbers("column lists")?.into_iter().filter(|&x| x != 0).collect();
        ensure!(entries.len() == deg, "column {} lists {} rows, degree says {deg}", c + 1, entries.len());
        for r in entries {
            ensure!(r <= m, "row index {r} out of range");
            rows[r - 1].set(c, true);
        }
    }
    for (r, &deg) in row_deg.iter().enumerate() {
        let mut entries: Vec<usize> = numbers("row lists")?.into_iter().filter(|&x| x != 0).collect();
        ensure!(entries.len() == deg, "row {} lists {} columns, degree says {deg}", r + 1, entries.len());
        entries.sort_unstable();
        entries.dedup();
        if entries.len() != deg || deg != rows[r].count_ones() {
            bail!("row list of row {} disagrees with the column lists", r + 1);
        }
        for c in entries {
            ensure!(c <= n, "column index {c} out of range");
            if !rows[r].get(c - 1) {
                bail!("row list of row {} disagrees with the column lists", r + 1);
            }
        }
    }
    Ok(BinaryMatrix::from_rows(n, rows)?)
}
