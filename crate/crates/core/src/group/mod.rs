//! Finite groups given by complete multiplication tables.
//!
//! Elements are indexed `0..order` and the identity always sits at index 0.
//! Everything downstream (Sylow theory, fixed-point complexes, equivariant
//! chain complexes) is built from exhaustive scans over these tables.

mod catalog;
mod enumerate;
mod ops;
mod perm;
mod spec;
mod subgroup;

pub use catalog::{catalog, catalog_groups, CatalogEntry};
pub use enumerate::{all_subgroups, conjugacy_class_representatives, subgroups_of};
pub use ops::{CosetTable, Quotient};
pub use perm::Permutation;
pub use spec::GroupSpec;
pub use subgroup::SubgroupSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Caps;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            labels: Some(vec!["e".into()]),
        }
    }

    /// Builds a group from a table already known to satisfy the axioms with
    /// identity 0. Inverses are derived from the table.
    pub(crate) fn from_trusted_table(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let row = &mul[g * order..(g + 1) * order];
            inv[g] = row.iter().position(|&x| x == 0).expect("trusted table has inverses") as u32;
        }
        FiniteGroup { order, mul, inv, labels }
    }

    /// Validates a Cayley table and relocates its identity to index 0.
    ///
    /// Checks run in the order: shape, identity, inverses, associativity.
    /// Associativity is exhaustive up to `caps.assoc_exhaustive` and sampled
    /// with `caps.assoc_samples` seeded triples above it.
    pub fn from_cayley_table(table: &[Vec<usize>], caps: &Caps) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        caps.check("group order", n, caps.order)?;
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
                return Err(Error::InvalidGroup(format!("no inverse for element {g}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        let failing = if n <= caps.assoc_exhaustive {
            (0..n)
                .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
                .find(|&(a, b, c)| !assoc(a, b, c))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
            (0..caps.assoc_samples)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .find(|&(a, b, c)| !assoc(a, b, c))
        };
        if let Some((a, b, c)) = failing {
            return Err(Error::InvalidGroup(format!("not associative on triple ({a}, {b}, {c})")));
        }

        // relabel so the identity is element 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }
        let labels = (0..n).map(|g| relabel(g).to_string()).collect();
        Ok(Self::from_trusted_table(n, mul, Some(labels)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, g: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(labels) => labels[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Checks the table invariants. Associativity is exhaustive up to
    /// `caps.assoc_exhaustive`, sampled above.
    pub fn validate(&self, caps: &Caps) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::InvariantViolation(format!("index 0 is not an identity for {g}")));
            }
            if self.mul(g, self.inv(g)) != 0 {
                return Err(Error::InvariantViolation(format!("inv[{g}] is not an inverse")));
            }
        }
        if self.mul.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvariantViolation("table entry out of range".into()));
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= caps.assoc_exhaustive {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvariantViolation(format!("not associative on ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
            for _ in 0..caps.assoc_samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvariantViolation(format!("not associative on ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    /// Direct product with element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            let (a1, b1) = (x / m, x % m);
            for y in 0..order {
                let (a2, b2) = (y / m, y % m);
                mul[x * order + y] = (self.mul(a1, a2) * m + other.mul(b1, b2)) as u32;
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
            .collect();
        FiniteGroup::from_trusted_table(order, mul, Some(labels))
    }
}
