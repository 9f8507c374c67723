//! Lower and upper bounds on `acat(G)`, a-specialness and sharpness.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{p_part, prime_divisors, prime_power_base};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupSet};
use crate::sylow::{sylow_subgroup, PIntersectionLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sharpness {
    /// `acat(G) = |G| - 1`.
    Sharp,
    NotSharp,
    Unknown,
}

impl std::fmt::Display for Sharpness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeData {
    pub p: u64,
    pub sylow_order: u64,
    pub num_sylows: usize,
    pub normalizer_order: usize,
    pub self_normalizing: bool,
    pub d_p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcatReport {
    pub group_id: String,
    pub order: usize,
    pub per_prime: Vec<PrimeData>,
    pub q: u64,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub a_special: Option<u64>,
    pub sharpness: Sharpness,
    /// `None` for groups of prime power order, where the check does not apply.
    pub range_consistency: Option<bool>,
    pub proof_inequality: Option<bool>,
    pub certificate_n: Option<u64>,
}

/// Sylow data for every prime dividing `|G|`, computed once.
pub struct SylowSummary {
    pub primes: Vec<(u64, SubgroupSet, SubgroupSet, PIntersectionLattice)>,
}

impl SylowSummary {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let primes = prime_divisors(g.order() as u64)
            .into_iter()
            .map(|p| {
                let sylow = sylow_subgroup(g, p)?;
                let normalizer = g.normalizer(&sylow);
                let lattice = PIntersectionLattice::new(g, p)?;
                Ok((p, sylow, normalizer, lattice))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SylowSummary { primes })
    }
}

/// Largest prime-power divisor of `n` (1 for `n = 1`).
pub fn largest_prime_power(n: u64) -> u64 {
    prime_divisors(n).into_iter().map(|p| p_part(n, p).0).max().unwrap_or(1)
}

fn lower_from(summary: &SylowSummary) -> u64 {
    summary
        .primes
        .iter()
        .map(|(p, sylow, normalizer, _)| {
            let ps = sylow.size() as u64;
            let whole = if normalizer.size() > sylow.size() { 2 * ps - 1 } else { ps - 1 };
            // an index-p subgroup of P is properly normalized inside P
            let index_p = 2 * (ps / p) - 1;
            whole.max(index_p)
        })
        .max()
        .unwrap_or(0)
}

pub fn lower_bound(g: &FiniteGroup) -> Result<u64> {
    Ok(lower_from(&SylowSummary::new(g)?))
}

pub fn upper_bound(g: &FiniteGroup) -> u64 {
    let n = g.order() as u64;
    if n <= 1 {
        return 0;
    }
    if prime_power_base(n).is_some() {
        return n - 1;
    }
    (3 * largest_prime_power(n) - 1).min(n - 1)
}

/// `Some(a)` when `|G| = a p^s` with `p ∤ a` and `p^s > a`.
pub fn a_special(g: &FiniteGroup) -> Result<Option<u64>> {
    let n = g.order() as u64;
    if n <= 1 {
        return Ok(None);
    }
    let q = largest_prime_power(n);
    let r = n / q;
    for p in prime_divisors(n) {
        let (ps, _) = p_part(n, p);
        if ps > n / ps && ps != q {
            return Err(Error::InvariantViolation(format!(
                "{p}-part {ps} witnesses specialness but the largest prime power is {q}"
            )));
        }
    }
    Ok((q > r).then_some(r))
}

fn sharpness_from(a: Option<u64>) -> Sharpness {
    match a {
        Some(1) | Some(2) => Sharpness::Sharp,
        Some(3) => Sharpness::Unknown,
        _ => Sharpness::NotSharp,
    }
}

pub fn sharpness(g: &FiniteGroup) -> Result<Sharpness> {
    let verdict = sharpness_from(a_special(g)?);
    let n = g.order() as u64;
    if verdict == Sharpness::NotSharp && upper_bound(g) + 1 >= n {
        return Err(Error::InvariantViolation(format!(
            "group of order {n} is not 1-, 2- or 3-special but the upper bound is {}",
            upper_bound(g)
        )));
    }
    Ok(verdict)
}

fn require_not_prime_power(g: &FiniteGroup) -> Result<()> {
    let n = g.order() as u64;
    if n <= 1 || prime_power_base(n).is_some() {
        return Err(Error::Hypothesis(format!("order {n} is a prime power")));
    }
    Ok(())
}

fn range_from(g: &FiniteGroup, summary: &SylowSummary, lower: u64, upper: u64) -> bool {
    let q = largest_prime_power(g.order() as u64);
    let (_, sylow, normalizer, _) = summary
        .primes
        .iter()
        .find(|(_, s, _, _)| s.size() as u64 == q)
        .expect("some Sylow has order q");
    let ps = sylow.size() as u64;
    let floor = (2 * ps).min(normalizer.size() as u64);
    floor <= lower + 1 && upper < 3 * ps
}

/// `[lower + 1, upper + 1]` sits inside `[min(2|P|, |N(P)|), 3|P|]` for a Sylow `P` of order `q`.
pub fn range_consistency(g: &FiniteGroup) -> Result<bool> {
    require_not_prime_power(g)?;
    let summary = SylowSummary::new(g)?;
    Ok(range_from(g, &summary, lower_from(&summary), upper_bound(g)))
}

fn inequality_from(g: &FiniteGroup, summary: &SylowSummary) -> bool {
    let q = largest_prime_power(g.order() as u64);
    summary.primes.iter().all(|(p, _, _, lattice)| {
        let s = lattice.exponent() as usize;
        let chain_ok = (0..lattice.d_p()).all(|d| {
            let lhs = Ratio::new(3 + d as u64, 3);
            let rhs = Ratio::new(q, p.pow((s.saturating_sub(d)) as u32));
            d <= s && lhs <= rhs
        });
        let nodes_ok = lattice
            .nodes()
            .iter()
            .zip(lattice.depths())
            .all(|(h, &depth)| (3 * q / h.size() as u64) as i64 - 2 >= depth as i64);
        chain_ok && nodes_ok
    })
}

/// Checks `1 + d/3 ≤ q / p^(s-d)` for every prime and every `d < d_p`, and
/// `⌊3q/|H|⌋ - 2 ≥ depth(H)` for every p-intersection `H`.
pub fn proof_inequality_check(g: &FiniteGroup) -> Result<bool> {
    require_not_prime_power(g)?;
    Ok(inequality_from(g, &SylowSummary::new(g)?))
}

impl AcatReport {
    pub fn analyze(g: &FiniteGroup, group_id: impl Into<String>) -> Result<AcatReport> {
        let n = g.order() as u64;
        let summary = SylowSummary::new(g)?;
        let lower = lower_from(&summary);
        let upper = upper_bound(g);
        if lower > upper {
            return Err(Error::InvariantViolation(format!("lower bound {lower} exceeds upper bound {upper}")));
        }
        let exact = (lower == upper).then_some(lower);
        if let Some(e) = exact {
            if e != n - 1 {
                return Err(Error::InvariantViolation(format!("bounds meet at {e}, not at |G| - 1")));
            }
        }
        let a = a_special(g)?;
        let sharp = if n > 1 { sharpness(g)? } else { Sharpness::Sharp };
        let (range, inequality) = if require_not_prime_power(g).is_ok() {
            (Some(range_from(g, &summary, lower, upper)), Some(inequality_from(g, &summary)))
        } else {
            (None, None)
        };
        let per_prime = summary
            .primes
            .iter()
            .map(|(p, sylow, normalizer, lattice)| PrimeData {
                p: *p,
                sylow_order: sylow.size() as u64,
                num_sylows: lattice.sylow_count(),
                normalizer_order: normalizer.size(),
                self_normalizing: normalizer == sylow,
                d_p: lattice.d_p(),
            })
            .collect();
        Ok(AcatReport {
            group_id: group_id.into(),
            order: g.order(),
            per_prime,
            q: largest_prime_power(n),
            lower,
            upper,
            exact,
            a_special: a,
            sharpness: sharp,
            range_consistency: range,
            proof_inequality: inequality,
            certificate_n: None,
        })
    }

    /// `d_p` list such as `2:2,3:1`.
    pub fn d_p_list(&self) -> String {
        self.per_prime.iter().map(|d| format!("{}:{}", d.p, d.d_p)).collect::<Vec<_>>().join(",")
    }
}
