//! Sparse elimination over the integers: invariant factors, kernel bases and
//! lattice membership.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::snf::{invariant_factors, smith_normal_form};
use super::SparseMatrix;
use crate::error::{Error, Result};

pub type IntVec = Vec<(u32, i64)>;

fn overflow() -> Error {
    Error::CapExceeded { what: "64-bit integer range in sparse elimination", requested: 1, limit: 0 }
}

/// `a + q b`, failing on overflow.
pub fn axpy(a: &[(u32, i64)], q: i64, b: &[(u32, i64)]) -> Option<IntVec> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (idx, val) = if take_a {
            i += 1;
            (a[i - 1].0, a[i - 1].1)
        } else if take_b {
            j += 1;
            (b[j - 1].0, q.checked_mul(b[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, a[i - 1].1.checked_add(q.checked_mul(b[j - 1].1)?)?)
        };
        if val != 0 {
            out.push((idx, val));
        }
    }
    Some(out)
}

/// `x a + y b`
fn combine(x: i64, a: &[(u32, i64)], y: i64, b: &[(u32, i64)]) -> Option<IntVec> {
    let scaled: Option<IntVec> = a.iter().map(|&(i, v)| Some((i, x.checked_mul(v)?))).collect();
    axpy(&scaled?, y, b)
}

/// `(g, u, v)` with `u a + v b = g = gcd(a, b) > 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn low(v: &[(u32, i64)]) -> Option<(u32, i64)> {
    v.last().copied()
}

/// Echelon basis of a sublattice of `Z^n`, keyed by the largest index of
/// each basis vector.
#[derive(Clone, Debug, Default)]
pub struct IntLattice {
    pivots: HashMap<u32, IntVec>,
}

impl IntLattice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[(u32, i64)]) -> Result<bool> {
        let mut v = v.to_vec();
        while let Some((l, x)) = low(&v) {
            let Some(b) = self.pivots.get(&l) else { return Ok(false) };
            let lead = b.last().expect("nonzero basis vector").1;
            if x % lead != 0 {
                return Ok(false);
            }
            v = axpy(&v, -(x / lead), b).ok_or_else(overflow)?;
        }
        Ok(true)
    }

    /// Adds `v` to the lattice, merging pivots by extended gcd.
    pub fn insert(&mut self, v: &[(u32, i64)]) -> Result<()> {
        let mut v = v.to_vec();
        while let Some((l, x)) = low(&v) {
            let Some(b) = self.pivots.get(&l) else {
                self.pivots.insert(l, v);
                return Ok(());
            };
            let lead = b.last().expect("nonzero basis vector").1;
            if x % lead == 0 {
                v = axpy(&v, -(x / lead), b).ok_or_else(overflow)?;
                continue;
            }
            let (g, s, t) = ext_gcd(x, lead);
            let merged = combine(s, &v, t, b).ok_or_else(overflow)?;
            let rest = combine(lead / g, &v, -(x / g), b).ok_or_else(overflow)?;
            self.pivots.insert(l, merged);
            v = rest;
        }
        Ok(())
    }
}

/// A `Z`-basis of `{x : m x = 0}` by column reduction with tracked transforms.
///
/// Basis vectors come out in increasing order of the column at which they
/// were found, which keeps cycle choices deterministic.
pub fn kernel_basis(m: &SparseMatrix) -> Result<Vec<IntVec>> {
    let mut pivots: HashMap<u32, (IntVec, IntVec)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        let mut a = col.clone();
        let mut t: IntVec = vec![(j as u32, 1)];
        loop {
            let Some((l, x)) = low(&a) else {
                kernel.push(t);
                break;
            };
            let Some((b, s)) = pivots.get(&l) else {
                pivots.insert(l, (a, t));
                break;
            };
            let lead = b.last().expect("nonzero pivot column").1;
            if x % lead == 0 {
                let q = -(x / lead);
                a = axpy(&a, q, b).ok_or_else(overflow)?;
                t = axpy(&t, q, s).ok_or_else(overflow)?;
                continue;
            }
            let (g, u, v) = ext_gcd(x, lead);
            let (b, s) = (b.clone(), s.clone());
            let merged = (
                combine(u, &a, v, &b).ok_or_else(overflow)?,
                combine(u, &t, v, &s).ok_or_else(overflow)?,
            );
            a = combine(lead / g, &a, -(x / g), &b).ok_or_else(overflow)?;
            t = combine(lead / g, &t, -(x / g), &s).ok_or_else(overflow)?;
            pivots.insert(l, merged);
        }
    }
    for v in &mut kernel {
        v.sort_unstable_by_key(|&(i, _)| i);
    }
    Ok(kernel)
}

/// Nonzero invariant factors of a sparse integer matrix.
///
/// Unit pivots are eliminated sparsely first; whatever remains is handed to
/// the dense Smith normal form.
pub fn sparse_invariant_factors(m: &SparseMatrix, dense_cap: usize, certify: bool) -> Result<Vec<BigInt>> {
    let mut cols: Vec<IntVec> = m.columns().to_vec();
    let mut col_alive = vec![true; cols.len()];
    let mut row_alive = vec![true; m.rows()];
    let mut row_index: Vec<Vec<u32>> = vec![Vec::new(); m.rows()];
    for (c, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_index[r as usize].push(c as u32);
        }
    }
    let mut units = 0usize;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..cols.len() {
            if !col_alive[c] || cols[c].is_empty() {
                continue;
            }
            let Some(&(r, u)) = cols[c]
                .iter()
                .filter(|&&(r, v)| v.abs() == 1 && row_alive[r as usize])
                .min_by_key(|&&(r, _)| row_index[r as usize].len())
            else {
                continue;
            };
            let others: Vec<u32> = {
                let mut o = row_index[r as usize].clone();
                o.sort_unstable();
                o.dedup();
                o.retain(|&c2| c2 as usize != c && col_alive[c2 as usize]);
                o
            };
            let mut updates = Vec::with_capacity(others.len());
            let mut ok = true;
            for &c2 in &others {
                let col2 = &cols[c2 as usize];
                let a = col2
                    .binary_search_by_key(&r, |&(row, _)| row)
                    .map_or(0, |i| col2[i].1);
                if a == 0 {
                    continue;
                }
                match axpy(col2, -a * u, &cols[c]) {
                    Some(new) => updates.push((c2, new)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            for (c2, new) in updates {
                for &(row, _) in &new {
                    row_index[row as usize].push(c2);
                }
                cols[c2 as usize] = new;
            }
            col_alive[c] = false;
            row_alive[r as usize] = false;
            row_index[r as usize].clear();
            units += 1;
            progress = true;
        }
    }

    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| col_alive[c] && !cols[c].is_empty()).collect();
    let mut row_map = HashMap::new();
    for &c in &live_cols {
        for &(r, _) in &cols[c] {
            let next = row_map.len();
            row_map.entry(r).or_insert(next);
        }
    }
    let mut factors: Vec<BigInt> = vec![BigInt::from(1); units];
    if !live_cols.is_empty() {
        let (rows, ncols) = (row_map.len(), live_cols.len());
        if rows.saturating_mul(ncols) > dense_cap {
            return Err(Error::CapExceeded { what: "dense Smith residual", requested: rows * ncols, limit: dense_cap });
        }
        let mut dense = vec![vec![0i64; ncols]; rows];
        for (j, &c) in live_cols.iter().enumerate() {
            for &(r, v) in &cols[c] {
                dense[row_map[&r]][j] = v;
            }
        }
        let residual = if certify {
            smith_normal_form(&dense)?.invariant_factors
        } else {
            invariant_factors(&dense)?
        };
        factors.extend(residual);
    }
    Ok(factors)
}
