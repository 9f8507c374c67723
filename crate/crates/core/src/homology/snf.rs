//! Smith normal form over the integers.
//!
//! The elimination runs on `i64` with checked arithmetic and restarts on
//! `BigInt` the moment anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Integer arithmetic where every operation may refuse (overflow).
pub trait ExactInt: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Truncated quotient and remainder.
    fn div_rem(&self, other: &Self) -> Option<(Self, Self)>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_rem(&self, other: &Self) -> Option<(Self, Self)> {
        Some((self.checked_div(*other)?, self.checked_rem(*other)?))
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_rem(&self, other: &Self) -> Option<(Self, Self)> {
        Some(Integer::div_rem(self, other))
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Elimination<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

fn identity<T: ExactInt>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| T::from_i64((i == j) as i64)).collect())
        .collect()
}

/// `target += q * source` on two rows of the same matrix.
fn row_axpy<T: ExactInt>(m: &mut [Vec<T>], target: usize, source: usize, q: &T) -> Option<()> {
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = x.add(&q.mul(y)?)?;
        }
    }
    Some(())
}

fn col_axpy<T: ExactInt>(m: &mut [Vec<T>], target: usize, source: usize, q: &T) -> Option<()> {
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            row[target] = row[target].add(&q.mul(&row[source])?)?;
        }
    }
    Some(())
}

impl<T: ExactInt> Elimination<T> {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn add_row(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        row_axpy(&mut self.a, target, source, q)?;
        if let Some(u) = &mut self.u {
            row_axpy(u, target, source, q)?;
        }
        Some(())
    }

    fn add_col(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        col_axpy(&mut self.a, target, source, q)?;
        if let Some(v) = &mut self.v {
            col_axpy(v, target, source, q)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for x in &mut self.a[i] {
            *x = x.neg()?;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = x.neg()?;
            }
        }
        Some(())
    }

    /// Smallest nonzero entry in the block `[t.., t..]`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&self.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Option<Vec<T>> {
        let mut diag = Vec::new();
        let limit = self.rows().min(self.cols());
        for t in 0..limit {
            let Some((pi, pj)) = self.smallest_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[t][t].clone();
                let mut moved = false;
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() {
                        let (q, _) = self.a[i][t].div_rem(&pivot)?;
                        self.add_row(i, t, &q.neg()?)?;
                        moved |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() {
                        let (q, _) = self.a[t][j].div_rem(&pivot)?;
                        self.add_col(j, t, &q.neg()?)?;
                        moved |= !self.a[t][j].is_zero();
                    }
                }
                if moved {
                    // a smaller remainder is left in row or column t
                    let mut best = (t, t);
                    for i in t + 1..self.rows() {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs_lt(&self.a[best.0][best.1]) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols() {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs_lt(&self.a[best.0][best.1]) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let offender = (t + 1..self.rows()).find(|&i| {
                    (t + 1..self.cols()).any(|j| {
                        !self.a[i][j].is_zero() && self.a[i][j].div_rem(&pivot).is_none_or(|(_, r)| !r.is_zero())
                    })
                });
                match offender {
                    Some(i) => self.add_row(t, i, &T::from_i64(1))?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            diag.push(self.a[t][t].clone());
        }
        Some(diag)
    }
}

/// Row and column transforms `(U, V)`.
type Transforms<T> = (Vec<Vec<T>>, Vec<Vec<T>>);

fn eliminate<T: ExactInt>(a: &[Vec<i64>], track: bool) -> Option<(Vec<T>, Option<Transforms<T>>)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut e = Elimination {
        a: a.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect(),
        u: track.then(|| identity(rows)),
        v: track.then(|| identity(cols)),
    };
    let diag = e.run()?;
    let certs = match (e.u, e.v) {
        (Some(u), Some(v)) => Some((u, v)),
        _ => None,
    };
    Some((diag, certs))
}

fn to_big(m: Vec<Vec<impl ExactInt>>) -> Vec<Vec<BigInt>> {
    m.into_iter().map(|r| r.into_iter().map(|x| x.to_bigint()).collect()).collect()
}

fn check_chain(factors: &[BigInt]) -> Result<()> {
    for w in factors.windows(2) {
        if !Zero::is_zero(&(&w[1] % &w[0])) {
            return Err(Error::InvariantViolation(format!("invariant factors {} and {} do not divide", w[0], w[1])));
        }
    }
    Ok(())
}

/// Invariant factors only, without transform certificates.
pub fn invariant_factors(a: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let factors = match eliminate::<i64>(a, false) {
        Some((diag, _)) => diag.into_iter().map(BigInt::from).collect(),
        None => eliminate::<BigInt>(a, false).expect("BigInt arithmetic cannot overflow").0,
    };
    check_chain(&factors)?;
    Ok(factors)
}

/// Smith normal form with certificates, verified before returning.
pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm> {
    let (factors, u, v) = match eliminate::<i64>(a, true) {
        Some((diag, Some((u, v)))) => (diag.into_iter().map(BigInt::from).collect(), to_big(u), to_big(v)),
        _ => {
            let (diag, certs) = eliminate::<BigInt>(a, true).expect("BigInt arithmetic cannot overflow");
            let (u, v) = certs.expect("certificates were requested");
            (diag, u, v)
        }
    };
    check_chain(&factors)?;
    let form = SmithForm { invariant_factors: factors, u, v };
    verify_certificate(a, &form)?;
    Ok(form)
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(<BigInt as Zero>::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !Zero::is_zero(&a[r][k])) else {
            return <BigInt as Zero>::zero();
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    prev * sign
}

/// Recomputes `U · A · V`, compares it with the diagonal form, and checks
/// that `U` and `V` are unimodular.
pub fn verify_certificate(a: &[Vec<i64>], form: &SmithForm) -> Result<()> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Ok(());
    }
    let big_a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let d = big_mul(&big_mul(&form.u, &big_a), &form.v);
    for (i, row) in d.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expected = if i == j && i < form.invariant_factors.len() {
                form.invariant_factors[i].clone()
            } else {
                <BigInt as Zero>::zero()
            };
            if *x != expected {
                return Err(Error::InvariantViolation(format!(
                    "Smith certificate fails at ({i}, {j}): {x} != {expected}"
                )));
            }
        }
    }
    if form.invariant_factors.iter().any(|f| !f.is_positive()) {
        return Err(Error::InvariantViolation("nonpositive invariant factor".into()));
    }
    for (name, m, n) in [("U", &form.u, rows), ("V", &form.v, cols)] {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::InvariantViolation(format!("{name} is not {n}x{n}")));
        }
        let det = determinant(m);
        if det.abs() != BigInt::from(1) {
            return Err(Error::InvariantViolation(format!("{name} has determinant {det}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(a: &[Vec<i64>]) -> Vec<i64> {
        let f = smith_normal_form(a).unwrap();
        f.invariant_factors.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&[vec![1, 0], vec![0, 1]]), vec![1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[]), Vec::<i64>::new());
    }

    #[test]
    fn bareiss_determinants() {
        let big = |m: &[&[i64]]| -> Vec<Vec<BigInt>> { m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect() };
        assert_eq!(determinant(&big(&[&[2, 1], &[1, 1]])), BigInt::from(1));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[0, 2, 1], &[3, 1, 4], &[1, 5, 9]])), BigInt::from(-32));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(determinant(&[]), BigInt::from(1));
        let mut form = smith_normal_form(&[vec![2, 0], vec![0, 3]]).unwrap();
        form.u[0][0] = &form.u[0][0] * 2;
        assert!(verify_certificate(&[vec![2, 0], vec![0, 3]], &form).is_err());
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = i64::MAX / 2;
        let a = vec![vec![big, big - 1], vec![big - 1, big - 2]];
        let f = smith_normal_form(&a).unwrap();
        assert_eq!(f.rank(), 2);
        let det = BigInt::from(big) * BigInt::from(big - 2) - BigInt::from(big - 1) * BigInt::from(big - 1);
        let product: BigInt = f.invariant_factors.iter().product();
        assert_eq!(product, det.abs());
    }

    #[test]
    fn factors_without_certificates_agree() {
        let a = vec![vec![4, 6, 8], vec![2, 2, 2], vec![0, 3, 9]];
        assert_eq!(invariant_factors(&a).unwrap(), smith_normal_form(&a).unwrap().invariant_factors);
    }
}
