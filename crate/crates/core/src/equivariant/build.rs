//! The one-prime complexes `X_p(G)`, their union `X(G)`, and the
//! obstruction count that turns `X(G)` into an upper bound.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{prime_divisors, prime_power_base};
use crate::bounds::{largest_prime_power, lower_bound};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{conjugacy_class_representatives, FiniteGroup, SubgroupSet};
use crate::homology::{homology, Coefficients};
use crate::sylow::{p_subgroups, sylow_subgroup, PIntersectionLattice};

use super::kill::weyl_representatives;
use super::{attach_cells_to_kill, cayley_one_complex, induce, inflate, GCWComplex, KillReport, Provenance};

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub subgroup: Vec<usize>,
    pub weyl_order: usize,
    #[serde(flatten)]
    pub kill: KillReport,
}

/// Homology of one fixed set, with the Euler-characteristic obstruction.
#[derive(Clone, Debug, Serialize)]
pub struct FixedCheck {
    pub prime: u64,
    pub subgroup: Vec<usize>,
    pub depth: Option<usize>,
    pub p_acyclic: bool,
    pub nonzero_degrees: Vec<i64>,
    /// Unreduced Euler characteristic of the fixed set.
    pub euler_characteristic: i64,
    pub weyl_order: usize,
    /// The Weyl group `N(H)/H` acts freely on the cells of the fixed set.
    pub weyl_free: bool,
}

impl FixedCheck {
    /// A finite complex with a free action of a nontrivial group has Euler
    /// characteristic divisible by the group order, so it cannot be acyclic.
    pub fn euler_obstructed(&self) -> bool {
        self.weyl_free && self.weyl_order > 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct XpBuild {
    pub prime: u64,
    pub d_p: usize,
    #[serde(skip)]
    pub complex: GCWComplex,
    pub stages: Vec<StageReport>,
    pub checks: Vec<FixedCheck>,
}

impl XpBuild {
    /// Every checked fixed set is `p`-acyclic.
    pub fn property_holds(&self) -> bool {
        self.checks.iter().all(|c| c.p_acyclic)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixedCheck> {
        self.checks.iter().filter(|c| !c.p_acyclic)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmithReport {
    pub passed: bool,
    pub checked: usize,
    pub witnesses: Vec<FixedCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct XBuild {
    #[serde(skip)]
    pub complex: GCWComplex,
    pub components: Vec<XpBuild>,
    pub cross_prime_free: bool,
    pub smith: SmithReport,
    pub dimension_cap: usize,
    pub completion: KillReport,
}

impl XBuild {
    pub fn acyclic(&self) -> bool {
        self.completion.is_complete()
    }
}

fn require_not_prime_power(g: &FiniteGroup) -> Result<()> {
    if g.order() == 1 || prime_power_base(g.order() as u64).is_some() {
        return Err(Error::Hypothesis(format!("order {} is a prime power", g.order())));
    }
    Ok(())
}

/// Checks one fixed set for `p`-acyclicity and Weyl-freeness.
pub fn check_fixed_set(x: &GCWComplex, h: &SubgroupSet, p: u64, depth: Option<usize>, caps: &Caps) -> Result<FixedCheck> {
    let g = x.group();
    let fc = x.fixed_complex(h, Coefficients::field(p)?, true, caps)?;
    let hom = homology(&fc.chain)?;
    let normalizer = g.normalizer(h);
    let weyl_free = fc.basis.iter().enumerate().all(|(dim, pts)| {
        pts.iter().all(|&(c, j)| {
            let cell = &x.cells(dim)[c];
            let rep = cell.cosets().representative(j);
            // stabilizer of gK in N(H) is N(H) ∩ gKg⁻¹
            normalizer.elements().filter(|&n| cell.isotropy.contains(g.conjugate(g.inv(rep), n))).count() == h.size()
        })
    });
    let euler = fc.chain.euler_characteristic() + 1;
    let weyl_order = normalizer.size() / h.size();
    if weyl_free && euler.rem_euclid(weyl_order as i64) != 0 {
        return Err(Error::InvariantViolation(format!(
            "free action of a group of order {weyl_order} on a complex with Euler characteristic {euler}"
        )));
    }
    Ok(FixedCheck {
        prime: p,
        subgroup: h.to_vec(),
        depth,
        p_acyclic: hom.is_zero(),
        nonzero_degrees: hom.nonzero_degrees(),
        euler_characteristic: euler,
        weyl_order,
        weyl_free,
    })
}

/// The one-prime construction with its stage reports and fixed-set checks.
///
/// Stage 0 is `G ×_{N(P)} X`, where `X` is the Cayley graph of `N(P)/P`
/// pulled back to `N(P)`. Stage `d + 1` visits the conjugacy classes of
/// p-intersections of depth `d + 1` and kills the mod-`p` homology of each
/// fixed set by attaching cells of dimension at most `d + 2` with that
/// isotropy. Afterwards every nontrivial `p`-subgroup class of depth at most
/// `d_p` has its fixed set checked.
pub fn build_x_p_report(g: &Arc<FiniteGroup>, p: u64, caps: &Caps) -> Result<XpBuild> {
    require_not_prime_power(g)?;
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::Hypothesis(format!("{p} does not divide the order {}", g.order())));
    }
    let sylow = sylow_subgroup(g, p)?;
    let normalizer = g.normalizer(&sylow);
    let (n_group, embedding) = g.subgroup_as_group(&normalizer);
    let local_p = SubgroupSet::from_elements(n_group.order(), embedding.iter().enumerate().filter(|(_, &e)| sylow.contains(e)).map(|(i, _)| i));
    let quotient = n_group.quotient(&local_p)?;
    let n_group = Arc::new(n_group);
    let base = cayley_one_complex(Arc::new(quotient.group))?;
    let inflated = inflate(&base, n_group, &quotient.projection)?;
    let mut x = induce(g.clone(), &embedding, &inflated)?;

    let lattice = PIntersectionLattice::new(g, p)?;
    let d_p = lattice.d_p();
    let mut stages = Vec::new();
    for d in 0..d_p {
        let nodes: Vec<SubgroupSet> = lattice.nodes_of_depth(d + 1).cloned().collect();
        for h in conjugacy_class_representatives(g, &nodes) {
            let (next, kill) = attach_cells_to_kill(&x, Coefficients::Field(p), d + 2, &h, Provenance::Attached { stage: d + 1 }, caps)?;
            let weyl_order = weyl_representatives(&x, &h).len();
            stages.push(StageReport { stage: d + 1, subgroup: h.to_vec(), weyl_order, kill });
            x = next;
        }
    }

    let mut checks = Vec::new();
    let subgroups: Vec<SubgroupSet> = p_subgroups(g, p)?.into_iter().filter(|k| !k.is_trivial()).collect();
    for k in conjugacy_class_representatives(g, &subgroups) {
        let depth = lattice.depth_of_p_subgroup(&k)?;
        if depth <= d_p {
            checks.push(check_fixed_set(&x, &k, p, Some(depth), caps)?);
        }
    }
    Ok(XpBuild { prime: p, d_p, complex: x, stages, checks })
}

/// The one-prime complex, failing when some fixed set is not `p`-acyclic.
pub fn build_x_p(g: &Arc<FiniteGroup>, p: u64, caps: &Caps) -> Result<GCWComplex> {
    let report = build_x_p_report(g, p, caps)?;
    if let Some(bad) = report.failures().next() {
        let reason = if bad.euler_obstructed() {
            format!(
                "; its Weyl group of order {} acts freely with Euler characteristic {}",
                bad.weyl_order, bad.euler_characteristic
            )
        } else {
            String::new()
        };
        return Err(Error::InvariantViolation(format!(
            "fixed set of the {p}-subgroup {:?} has mod-{p} homology in degrees {:?}{reason}",
            bad.subgroup, bad.nonzero_degrees
        )));
    }
    Ok(report.complex)
}

/// Checks every conjugacy class of nontrivial `p`-subgroups, for every prime `p`.
pub fn smith_acyclicity_check(x: &GCWComplex, caps: &Caps) -> Result<SmithReport> {
    let g = x.group();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for p in prime_divisors(g.order() as u64) {
        let subgroups: Vec<SubgroupSet> = p_subgroups(g, p)?.into_iter().filter(|k| !k.is_trivial()).collect();
        for k in conjugacy_class_representatives(g, &subgroups) {
            checked += 1;
            let check = check_fixed_set(x, &k, p, None, caps)?;
            if !check.p_acyclic {
                witnesses.push(check);
            }
        }
    }
    Ok(SmithReport { passed: witnesses.is_empty(), checked, witnesses })
}

/// `⊔_p X_p(G)`, then free cells attached over the integers up to
/// dimension `max_p d_p + 3`.
pub fn build_x_report(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<XBuild> {
    require_not_prime_power(g)?;
    let primes = prime_divisors(g.order() as u64);
    let components: Vec<XpBuild> = primes.iter().map(|&p| build_x_p_report(g, p, caps)).collect::<Result<_>>()?;

    let mut cross_prime_free = true;
    for comp in &components {
        for &p in primes.iter().filter(|&&p| p != comp.prime) {
            let subgroups: Vec<SubgroupSet> = p_subgroups(g, p)?.into_iter().filter(|k| !k.is_trivial()).collect();
            for k in conjugacy_class_representatives(g, &subgroups) {
                let fc = comp.complex.fixed_complex(&k, Coefficients::Integers, false, caps)?;
                cross_prime_free &= fc.chain.total_cells() == 0;
            }
        }
    }

    let mut union = GCWComplex::new(g.clone());
    for comp in &components {
        union = union.disjoint_union(&comp.complex)?;
    }
    let smith = smith_acyclicity_check(&union, caps)?;
    let dimension_cap = components.iter().map(|c| c.d_p).max().unwrap_or(0) + 3;
    let trivial = SubgroupSet::trivial(g.order());
    let (complex, completion) =
        attach_cells_to_kill(&union, Coefficients::Integers, dimension_cap, &trivial, Provenance::Completion, caps)?;
    complex.validate()?;
    Ok(XBuild { complex, components, cross_prime_free, smith, dimension_cap, completion })
}

/// The acyclic complex `X(G)`, failing with the residual when the cap is reached.
pub fn build_x(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<GCWComplex> {
    let report = build_x_report(g, caps)?;
    if !report.acyclic() {
        return Err(Error::Residual(format!(
            "integral homology in degrees {:?} above dimension cap {}",
            report.completion.residual_degrees, report.dimension_cap
        )));
    }
    Ok(report.complex)
}

/// The least `n` for which every cell can be mapped into `Δ^G_n`.
///
/// A `k`-cell with isotropy `K` extends once `(Δ^G_n)^K` is
/// `(k − 1)`-connected, that is `⌊(n+1)/|K|⌋ − 2 ≥ k − 1`, or once the fixed
/// set is a full simplex at `n = |G| − 1`.
pub fn obstruction_bound(x: &GCWComplex) -> u64 {
    let order = x.group().order() as u64;
    (0..=x.dimension().max(-1))
        .filter(|&k| k >= 0)
        .flat_map(|k| x.cells(k as usize).iter().map(move |c| (k as u64, c.isotropy.size() as u64)))
        .map(|(k, size)| (size * (k + 1) - 1).min(order - 1))
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n: u64,
    pub cells: usize,
    pub smith_acyclic: bool,
}

/// The obstruction bound of `X(G)`, or `None` when `X(G)` could not be made
/// acyclic within the dimension cap.
pub fn certified_upper_bound(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<Option<Certificate>> {
    let report = build_x_report(g, caps)?;
    if !report.acyclic() {
        return Ok(None);
    }
    let n = obstruction_bound(&report.complex);
    let q = largest_prime_power(g.order() as u64);
    if n > 3 * q - 1 {
        return Err(Error::InvariantViolation(format!("certificate {n} exceeds 3q − 1 = {}", 3 * q - 1)));
    }
    let lower = lower_bound(g)?;
    if n < lower {
        return Err(Error::InvariantViolation(format!("certificate {n} is below the lower bound {lower}")));
    }
    Ok(Some(Certificate { n, cells: report.complex.orbit_count(), smith_acyclic: report.smith.passed }))
}
