//! Killing homology of a fixed complex by attaching orbit cells.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::SubgroupSet;
use crate::homology::{homology, inv_mod, kernel_basis, reduce_vec, Coefficients, IntLattice, IntVec, ModpBasis};

use super::{FixedComplex, GCWComplex, Provenance};

/// Outcome of the semisimple splitting of a free cover of the top homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub degree: i64,
    pub weyl_order: usize,
    pub module_dim: usize,
    /// Rank of the free `F_p[W]`-module mapping onto the homology.
    pub generators: usize,
    /// Dimension of the projective kernel; zero exactly when the cover is an isomorphism.
    pub complement_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KillReport {
    pub isotropy: Vec<usize>,
    /// Orbits attached per dimension.
    pub attached: BTreeMap<usize, usize>,
    /// Degrees with homology left when the dimension cap stopped the process.
    pub residual_degrees: Vec<i64>,
    pub splitting: Option<SplittingReport>,
}

impl KillReport {
    pub fn is_complete(&self) -> bool {
        self.residual_degrees.is_empty()
    }

    pub fn orbits_attached(&self) -> usize {
        self.attached.values().sum()
    }
}

enum Span {
    Integral(IntLattice),
    Modular(u64, ModpBasis),
}

impl Span {
    fn new(coefficients: Coefficients) -> Self {
        match coefficients {
            Coefficients::Integers => Span::Integral(IntLattice::new()),
            Coefficients::Field(p) => Span::Modular(p, ModpBasis::new(p)),
        }
    }

    fn contains(&self, v: &[(u32, i64)]) -> Result<bool> {
        match self {
            Span::Integral(l) => l.contains(v),
            Span::Modular(p, b) => Ok(b.contains(&reduce_vec(v, *p))),
        }
    }

    fn insert(&mut self, v: &[(u32, i64)]) -> Result<()> {
        match self {
            Span::Integral(l) => l.insert(v),
            Span::Modular(p, b) => {
                b.insert(reduce_vec(v, *p));
                Ok(())
            }
        }
    }
}

/// Representatives of `N(H)/H` as elements of `G`, identity first.
pub(crate) fn weyl_representatives(x: &GCWComplex, h: &SubgroupSet) -> Vec<usize> {
    let g = x.group();
    let normalizer = g.normalizer(h);
    let cosets = g.left_cosets(h);
    cosets.representatives().iter().copied().filter(|&r| normalizer.contains(r)).collect()
}

/// Permutation of the fixed `dim`-cells induced by `n`.
fn point_permutation(x: &GCWComplex, fc: &FixedComplex, dim: usize, n: usize) -> Result<Vec<u32>> {
    fc.basis[dim]
        .iter()
        .map(|&pt| {
            fc.index_of(dim, x.translate_point(dim, pt, n)).map(|i| i as u32).ok_or_else(|| {
                Error::InvariantViolation(format!("element {n} does not preserve the fixed set"))
            })
        })
        .collect()
}

fn permute(v: &[(u32, i64)], perm: &[u32]) -> IntVec {
    let mut out: IntVec = v.iter().map(|&(i, a)| (perm[i as usize], a)).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Attaches orbit cells with the given isotropy until the reduced homology
/// of the isotropy's fixed complex vanishes, or the next cell would exceed
/// `target_dim_cap`.
///
/// Degrees are treated from the bottom. In degree `k` the kernel basis of
/// `∂_k` is scanned in order, and a `(k+1)`-cell orbit is attached along
/// each cycle not already in the span of the boundaries and of the
/// `N(H)/H`-translates of earlier choices. With field coefficients the
/// integral cycles suffice, since lower degrees are already `p`-acyclic and
/// so carry no `p`-torsion.
pub fn attach_cells_to_kill(
    x: &GCWComplex,
    coefficients: Coefficients,
    target_dim_cap: usize,
    isotropy: &SubgroupSet,
    provenance: Provenance,
    caps: &Caps,
) -> Result<(GCWComplex, KillReport)> {
    let mut x = x.clone();
    let weyl = weyl_representatives(&x, isotropy);
    let mut report = KillReport { isotropy: isotropy.to_vec(), ..KillReport::default() };
    let mut previous: Option<i64> = None;
    loop {
        let fc = x.fixed_complex(isotropy, coefficients, true, caps)?;
        let h = homology(&fc.chain)?;
        let Some(k) = h.first_nonzero_degree() else { break };
        if previous == Some(k) {
            return Err(Error::InvariantViolation(format!(
                "homology in degree {k} survived the cells attached to kill it"
            )));
        }
        if k + 1 > target_dim_cap as i64 {
            report.residual_degrees = h.nonzero_degrees();
            if let Coefficients::Field(p) = coefficients {
                if !(weyl.len() as u64).is_multiple_of(p) && k >= 0 && fc.chain.dim(k + 1) == 0 {
                    report.splitting = Some(split_top_homology(&x, &fc, k as usize, p, isotropy, &weyl)?);
                }
            }
            break;
        }
        previous = Some(k);
        if k == -1 {
            x.attach(0, isotropy.clone(), &[], provenance)?;
            *report.attached.entry(0).or_default() += 1;
            continue;
        }
        let ku = k as usize;
        let d = fc.chain.boundary(k).expect("reduced complexes have a boundary from degree 0");
        let cycles = kernel_basis(d)?;
        let mut span = Span::new(coefficients);
        if let Some(up) = fc.chain.boundary(k + 1) {
            for col in up.columns() {
                span.insert(col)?;
            }
        }
        let perms: Vec<Vec<u32>> = weyl.iter().map(|&n| point_permutation(&x, &fc, ku, n)).collect::<Result<_>>()?;
        for z in &cycles {
            if span.contains(z)? {
                continue;
            }
            let boundary: Vec<(usize, usize, i64)> = z
                .iter()
                .map(|&(i, a)| {
                    let (c, j) = fc.basis[ku][i as usize];
                    (c, j, a)
                })
                .collect();
            x.attach(ku + 1, isotropy.clone(), &boundary, provenance)?;
            *report.attached.entry(ku + 1).or_default() += 1;
            for perm in &perms {
                span.insert(&permute(z, perm))?;
            }
        }
    }
    Ok((x, report))
}

fn dense_mod(v: &[(u32, i64)], len: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, a) in reduce_vec(v, p) {
        out[i as usize] = a;
    }
    out
}

/// Splits a free `F_p[W]`-cover of the top homology by averaging a linear
/// section over `W`, and checks the result is an equivariant section.
fn split_top_homology(
    x: &GCWComplex,
    fc: &FixedComplex,
    k: usize,
    p: u64,
    h: &SubgroupSet,
    weyl: &[usize],
) -> Result<SplittingReport> {
    let g = x.group();
    let n = fc.chain.dim(k as i64);
    let w = weyl.len();
    let d = fc.chain.boundary(k as i64).expect("degree has a boundary");
    // a basis of the module of cycles
    let mut echelon = ModpBasis::new(p);
    let basis: Vec<Vec<u64>> = kernel_basis(d)?
        .iter()
        .filter(|z| echelon.insert(reduce_vec(z, p)))
        .map(|z| dense_mod(z, n, p))
        .collect();
    let m = basis.len();
    let perms: Vec<Vec<u32>> = weyl.iter().map(|&e| point_permutation(x, fc, k, e)).collect::<Result<_>>()?;
    let act = |wi: usize, v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for (i, &a) in v.iter().enumerate() {
            out[perms[wi][i] as usize] = a;
        }
        out
    };
    let to_sparse = |v: &[u64]| -> Vec<(u32, u64)> {
        v.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &a)| (i as u32, a)).collect()
    };
    // W as a group on its representatives
    let cosets = g.left_cosets(h);
    let w_index = |e: usize| -> usize {
        let c = cosets.coset_of(e);
        weyl.iter().position(|&r| cosets.coset_of(r) == c).expect("element of the normalizer")
    };
    let mul = |a: usize, b: usize| w_index(g.mul(weyl[a], weyl[b]));
    let inverse: Vec<usize> = (0..w).map(|a| w_index(g.inv(weyl[a]))).collect();

    // free cover: generators chosen greedily by W-span
    let mut span = ModpBasis::new(p);
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for b in &basis {
        if span.contains(&to_sparse(b)) {
            continue;
        }
        for wi in 0..w {
            span.insert(to_sparse(&act(wi, b)));
        }
        gens.push(b.clone());
    }
    let r = gens.len();
    let cols = r * w;
    // column (i, u) of the cover is u · gen_i
    let a_cols: Vec<Vec<u64>> = (0..r).flat_map(|i| (0..w).map(move |u| (i, u))).map(|(i, u)| act(u, &gens[i])).collect();

    // E·A = R in reduced echelon form
    let mut rows: Vec<Vec<u64>> = (0..n).map(|i| (0..cols).map(|c| a_cols[c][i]).collect()).collect();
    let mut e: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..n).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, pr);
        e.swap(rank, pr);
        let inv = inv_mod(rows[rank][c], p);
        for v in rows[rank].iter_mut().chain(e[rank].iter_mut()) {
            *v = *v * inv % p;
        }
        for i in 0..n {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
                }
                for j in 0..n {
                    e[i][j] = (e[i][j] + (p - f) * e[rank][j]) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let section0 = |v: &[u64]| -> Vec<u64> {
        let mut x = vec![0u64; cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = e[row].iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p);
        }
        x
    };
    let left = |wi: usize, f: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; cols];
        for i in 0..r {
            for u in 0..w {
                out[i * w + mul(wi, u)] = f[i * w + u];
            }
        }
        out
    };
    let scale = inv_mod(w as u64 % p, p);
    let section = |v: &[u64]| -> Vec<u64> {
        let mut total = vec![0u64; cols];
        for wi in 0..w {
            let term = left(wi, &section0(&act(inverse[wi], v)));
            for (t, a) in total.iter_mut().zip(term) {
                *t = (*t + a) % p;
            }
        }
        total.iter().map(|&t| t * scale % p).collect()
    };
    let apply = |f: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for (c, &a) in f.iter().enumerate() {
            if a != 0 {
                for (o, &b) in out.iter_mut().zip(&a_cols[c]) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    };
    for b in &basis {
        let s = section(b);
        if apply(&s) != *b {
            return Err(Error::InvariantViolation("averaged section is not a section of the free cover".into()));
        }
        for wi in 0..w {
            if section(&act(wi, b)) != left(wi, &s) {
                return Err(Error::InvariantViolation("averaged section is not equivariant".into()));
            }
        }
    }
    Ok(SplittingReport { degree: k as i64, weyl_order: w, module_dim: m, generators: r, complement_dim: cols - m })
}
