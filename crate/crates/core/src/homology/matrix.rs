use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Integer matrix in compressed-column form: each column is a list of
/// `(row, value)` pairs sorted by row with no zero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            columns[c].push((r as u32, v));
        }
        for col in &mut columns {
            normalize(col);
        }
        SparseMatrix { rows, columns }
    }

    /// Builds from columns given as unsorted `(row, value)` lists.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let mut columns = columns;
        for col in &mut columns {
            debug_assert!(col.iter().all(|&(r, _)| (r as usize) < rows));
            normalize(col);
        }
        SparseMatrix { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.columns[c];
        col.binary_search_by_key(&(r as u32), |&(row, _)| row).map_or(0, |i| col[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r as usize][c] = v;
            }
        }
        out
    }

    /// `self * other`, with overflow reported as an error.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let overflow = || Error::InvariantViolation("integer overflow in matrix product".into());
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        let mut columns = Vec::with_capacity(other.cols());
        for col in &other.columns {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k as usize] {
                    let slot = &mut acc[r as usize];
                    if *slot == 0 {
                        touched.push(r);
                    }
                    *slot = a.checked_mul(b).and_then(|p| slot.checked_add(p)).ok_or_else(overflow)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let out: Vec<(u32, i64)> = touched
                .iter()
                .filter_map(|&r| {
                    let v = std::mem::take(&mut acc[r as usize]);
                    (v != 0).then_some((r, v))
                })
                .collect();
            touched.clear();
            columns.push(out);
        }
        Ok(SparseMatrix { rows: self.rows, columns })
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                columns[r as usize].push((c as u32, v));
            }
        }
        SparseMatrix { rows: self.cols(), columns }
    }

    /// Coordinate dump: a `rows cols nnz` header then one `row col value` line per entry.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols(), self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                writeln!(out, "{r} {c} {v}").expect("writing to a String");
            }
        }
        out
    }

    pub fn from_triplet_text(text: &str) -> Result<SparseMatrix> {
        let bad = |msg: &str| Error::Input(format!("matrix dump: {msg}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("header needs three integers")))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = header[..] else {
            return Err(bad("header needs three integers"));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(bad(&format!("malformed entry `{line}`")));
            };
            let (r, c, v): (usize, usize, i64) = (
                r.parse().map_err(|_| bad(line))?,
                c.parse().map_err(|_| bad(line))?,
                v.parse().map_err(|_| bad(line))?,
            );
            if r >= rows || c >= cols {
                return Err(bad(&format!("entry `{line}` outside {rows}x{cols}")));
            }
            triplets.push((r, c, v));
        }
        if triplets.len() != nnz {
            return Err(bad(&format!("header promises {nnz} entries, found {}", triplets.len())));
        }
        Ok(SparseMatrix::from_triplets(rows, cols, triplets))
    }
}

fn normalize(col: &mut Vec<(u32, i64)>) {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    *col = out;
}
