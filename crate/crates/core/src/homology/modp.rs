//! Linear algebra over `F_p`.

use std::collections::HashMap;

use super::SparseMatrix;

/// Sparse vector over `F_p`: sorted `(index, value)` pairs, values in `1..p`.
pub type ModpVec = Vec<(u32, u64)>;

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn reduce_vec(v: &[(u32, i64)], p: u64) -> ModpVec {
    v.iter()
        .filter_map(|&(i, x)| {
            let r = x.rem_euclid(p as i64) as u64;
            (r != 0).then_some((i, r))
        })
        .collect()
}

/// `a + q b` over `F_p`.
fn axpy(a: &ModpVec, q: u64, b: &ModpVec, p: u64) -> ModpVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (ia, ib) = (a.get(i).map(|x| x.0), b.get(j).map(|x| x.0));
        let (idx, val) = match (ia, ib) {
            (Some(x), Some(y)) if x == y => {
                let v = (a[i].1 + q * b[j].1) % p;
                i += 1;
                j += 1;
                (x, v)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, a[i - 1].1)
            }
            (Some(x), None) => {
                i += 1;
                (x, a[i - 1].1)
            }
            (_, Some(y)) => {
                j += 1;
                (y, q * b[j - 1].1 % p)
            }
            (None, None) => unreachable!(),
        };
        if val != 0 {
            out.push((idx, val));
        }
    }
    out
}

/// Incremental echelon basis of a subspace of `F_p^n`, keyed by the largest
/// index of each basis vector.
#[derive(Clone, Debug)]
pub struct ModpBasis {
    p: u64,
    pivots: HashMap<u32, ModpVec>,
}

impl ModpBasis {
    pub fn new(p: u64) -> Self {
        ModpBasis { p, pivots: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut v: ModpVec) -> ModpVec {
        while let Some(&(low, x)) = v.last() {
            match self.pivots.get(&low) {
                Some(b) => {
                    let lead = b.last().expect("basis vectors are nonzero").1;
                    let q = (self.p - x * inv_mod(lead, self.p) % self.p) % self.p;
                    v = axpy(&v, q, b, self.p);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &ModpVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: ModpVec) -> bool {
        let r = self.reduce(v);
        match r.last() {
            Some(&(low, _)) => {
                self.pivots.insert(low, r);
                true
            }
            None => false,
        }
    }
}

fn dense_rank(m: &SparseMatrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = inv_mod(a[rank][c], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in c..cols {
                    a[r][k] = (a[r][k] + (p - f) * a[rank][k]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over `F_p`; sparse column reduction, dense elimination below 64 columns.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    if m.cols() < 64 {
        return dense_rank(m, p);
    }
    let mut basis = ModpBasis::new(p);
    m.columns()
        .iter()
        .filter(|col| basis.insert(reduce_vec(col, p)))
        .count()
}
