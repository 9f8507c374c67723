//! Chain complexes and their homology over `Z` or `F_p`.

mod integral;
mod matrix;
mod modp;
mod snf;

pub use integral::{axpy, kernel_basis, sparse_invariant_factors, IntLattice, IntVec};
pub use matrix::SparseMatrix;
pub use modp::{inv_mod, rank_mod_p, reduce_vec, ModpBasis, ModpVec};
pub use snf::{invariant_factors, smith_normal_form, verify_certificate, ExactInt, SmithForm};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest dense residual (rows × columns) handed to the Smith normal form.
const DENSE_RESIDUAL_CAP: usize = 16_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Field(u64),
}

impl Coefficients {
    pub fn field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Field(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

/// A bounded chain complex of free modules with integer boundary matrices.
///
/// Degrees run from `min_degree` (−1 when augmented) upward; `boundary(k)`
/// maps degree `k` to degree `k − 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    coefficients: Coefficients,
    min_degree: i64,
    dims: Vec<usize>,
    /// `boundaries[i]` leaves degree `min_degree + i + 1`.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0` (modulo `p` for field coefficients).
    pub fn new(
        coefficients: Coefficients,
        min_degree: i64,
        dims: Vec<usize>,
        boundaries: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if let Coefficients::Field(p) = coefficients {
            Coefficients::field(p)?;
        }
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::ConstructionDefect(format!(
                "{} boundary maps for {} degrees",
                boundaries.len(),
                dims.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::ConstructionDefect(format!(
                    "boundary from degree {} is {}x{}, expected {}x{}",
                    min_degree + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for i in 1..boundaries.len() {
            let product = boundaries[i - 1].checked_mul(&boundaries[i])?;
            let bad = product.columns().iter().enumerate().find_map(|(c, col)| {
                col.iter()
                    .find(|&&(_, v)| match coefficients {
                        Coefficients::Integers => v != 0,
                        Coefficients::Field(p) => v.rem_euclid(p as i64) != 0,
                    })
                    .map(|_| c)
            });
            if let Some(cell) = bad {
                return Err(Error::ConstructionDefect(format!(
                    "boundary of boundary is nonzero on cell {cell} of degree {}",
                    min_degree + i as i64 + 1
                )));
            }
        }
        Ok(ChainComplex { coefficients, min_degree, dims, boundaries })
    }

    pub fn zero(coefficients: Coefficients, min_degree: i64) -> Self {
        ChainComplex { coefficients, min_degree, dims: Vec::new(), boundaries: Vec::new() }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn with_coefficients(mut self, coefficients: Coefficients) -> Result<Self> {
        if let Coefficients::Field(p) = coefficients {
            Coefficients::field(p)?;
        }
        self.coefficients = coefficients;
        Ok(self)
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Highest degree with a basis slot, or `min_degree − 1` if there is none.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_cells(&self) -> usize {
        self.dims.iter().sum()
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let i = degree - self.min_degree;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// The boundary leaving `degree`, if that degree has a lower neighbour.
    pub fn boundary(&self, degree: i64) -> Option<&SparseMatrix> {
        let i = self.index(degree)?;
        (i >= 1).then(|| &self.boundaries[i - 1])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| sign(self.min_degree + i as i64) * d as i64)
            .sum()
    }
}

fn sign(degree: i64) -> i64 {
    if degree.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: i64,
    /// Betti number over `Z`, dimension over `F_p`.
    pub rank: usize,
    /// Invariant factors greater than one; always empty over a field.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, degree: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.group(degree).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, degree: i64) -> &[u64] {
        self.group(degree).map_or(&[], |g| &g.torsion)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.groups.iter().filter(|g| !g.is_zero()).map(|g| g.degree).collect()
    }

    pub fn first_nonzero_degree(&self) -> Option<i64> {
        self.nonzero_degrees().first().copied()
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|g| sign(g.degree) * g.rank as i64).sum()
    }
}

struct MapData {
    rank: usize,
    factors: Vec<BigInt>,
}

fn analyse_map(m: &SparseMatrix, coefficients: Coefficients) -> Result<MapData> {
    match coefficients {
        Coefficients::Field(p) => Ok(MapData { rank: rank_mod_p(m, p), factors: Vec::new() }),
        Coefficients::Integers => {
            let factors = sparse_invariant_factors(m, DENSE_RESIDUAL_CAP, cfg!(debug_assertions))?;
            Ok(MapData { rank: factors.len(), factors })
        }
    }
}

/// Homology of the complex in its own coefficients.
pub fn homology(cc: &ChainComplex) -> Result<HomologyResult> {
    let maps: Vec<MapData> = cc
        .boundaries
        .par_iter()
        .map(|m| analyse_map(m, cc.coefficients))
        .collect::<Result<_>>()?;
    let mut groups = Vec::with_capacity(cc.dims.len());
    for (i, &dim) in cc.dims.iter().enumerate() {
        let out_rank = if i >= 1 { maps[i - 1].rank } else { 0 };
        let incoming = maps.get(i);
        let in_rank = incoming.map_or(0, |m| m.rank);
        let torsion = incoming
            .map(|m| {
                m.factors
                    .iter()
                    .filter(|f| !f.is_one())
                    .map(|f| {
                        u64::try_from(f).map_err(|_| {
                            Error::CapExceeded { what: "torsion coefficient bits", requested: 65, limit: 64 }
                        })
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .transpose()?
            .unwrap_or_default();
        let rank = dim
            .checked_sub(out_rank + in_rank)
            .ok_or_else(|| Error::InvariantViolation(format!("negative homology rank in degree {i}")))?;
        groups.push(HomologyGroup { degree: cc.min_degree + i as i64, rank, torsion });
    }
    Ok(HomologyResult { coefficients: cc.coefficients, groups })
}

/// Reduced homology vanishes with `F_p` coefficients. The complex must be augmented.
pub fn is_p_acyclic(cc: &ChainComplex, p: u64) -> Result<bool> {
    Ok(homology(&cc.clone().with_coefficients(Coefficients::field(p)?)?)?.is_zero())
}

/// Reduced integral homology vanishes. The complex must be augmented.
pub fn is_acyclic(cc: &ChainComplex) -> Result<bool> {
    Ok(homology(&cc.clone().with_coefficients(Coefficients::Integers)?)?.is_zero())
}
