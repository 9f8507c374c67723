//! Batch verification suites over the catalog.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::prime_divisors;
use crate::config::Caps;
use crate::equivariant::{build_x_report, certified_upper_bound, XBuild};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, catalog, catalog_groups, CatalogEntry};
use crate::simplex::{verify_fixed_point_formula, Connectivity, SkeletalComplex};
use crate::sylow::{p_subgroups, PIntersectionLattice};

/// Groups on which the designer complexes are built.
pub const CONSTRUCTION_GROUPS: [&str; 6] = ["S3", "C6", "D5", "A4", "D6", "C30"];

/// Counterexamples kept in a report; the failure count is always exact.
const KEPT_COUNTEREXAMPLES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub group: String,
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub skipped: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: true,
            cases: 0,
            skipped: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn pass(&mut self) {
        self.cases += 1;
    }

    fn fail(&mut self, group: &str, case: String, detail: String) {
        self.cases += 1;
        self.failures += 1;
        self.passed = false;
        if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample { group: group.to_string(), case, detail });
        }
    }

    fn check(&mut self, ok: bool, group: &str, case: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(group, case(), detail());
        }
    }

    fn merge(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.skipped += other.skipped;
        self.failures += other.failures;
        self.passed &= other.passed;
        let room = KEPT_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(other.counterexamples.into_iter().take(room));
    }
}

fn subgroup_pairs(max_order: usize, caps: &Caps) -> Result<Vec<(CatalogEntry, Vec<crate::SubgroupSet>)>> {
    catalog_groups(max_order, caps)?
        .into_iter()
        .map(|e| {
            let subs = all_subgroups(&e.group, caps)?;
            Ok((e, subs))
        })
        .collect()
}

/// The fixed-point identification for every catalog group of order at most
/// `max_order`, every subgroup and every `0 ≤ n < |G|` within the face cap.
pub fn fixed_points(max_order: usize, caps: &Caps) -> Result<SuiteReport> {
    let pairs = subgroup_pairs(max_order, caps)?;
    let jobs: Vec<(&CatalogEntry, &crate::SubgroupSet)> =
        pairs.iter().flat_map(|(e, subs)| subs.iter().map(move |h| (e, h))).collect();
    let parts: Vec<SuiteReport> = jobs
        .par_iter()
        .map(|&(entry, h)| {
            let mut report = SuiteReport::new("fixed-points");
            let order = entry.group.order();
            match verify_fixed_point_formula(&entry.group, h, 0..order, caps) {
                Ok(iso) => {
                    report.cases += iso.checked_n.len();
                    report.skipped += iso.skipped_n.len();
                }
                Err(e) => report.fail(&entry.name, format!("H = {:?}", h.to_vec()), e.to_string()),
            }
            report
        })
        .collect();
    let mut total = SuiteReport::new("fixed-points");
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}

/// Homological connectivity of every fixed subcomplex against `⌊(n+1)/|H|⌋ − 2`.
pub fn connectivity(max_order: usize, caps: &Caps) -> Result<SuiteReport> {
    let pairs = subgroup_pairs(max_order, caps)?;
    let jobs: Vec<(&CatalogEntry, &crate::SubgroupSet, usize)> = pairs
        .iter()
        .flat_map(|(e, subs)| subs.iter().flat_map(move |h| (0..e.group.order()).map(move |n| (e, h, n))))
        .collect();
    let parts: Vec<SuiteReport> = jobs
        .par_iter()
        .map(|&(entry, h, n)| {
            let mut report = SuiteReport::new("connectivity");
            let blocks = h.index();
            let k = (n + 1) / h.size();
            let expected = if k == blocks {
                Connectivity::ContractibleByFullness
            } else {
                Connectivity::Finite(k as i64 - 2)
            };
            let case = || format!("|H| = {}, n = {n}", h.size());
            match SkeletalComplex::fixed_subcomplex(&entry.group, h, n, caps).and_then(|c| c.connectivity(caps)) {
                Ok(found) => report.check(found == expected, &entry.name, case, || {
                    format!("connectivity {found:?}, expected {expected:?}")
                }),
                Err(Error::CapExceeded { .. }) => report.skipped += 1,
                Err(e) => report.fail(&entry.name, case(), e.to_string()),
            }
            report
        })
        .collect();
    let mut total = SuiteReport::new("connectivity");
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}

/// The depth lemma and its two corollaries, with every `p`-subgroup taken
/// from exhaustive subgroup enumeration.
pub fn lattice(max_order: usize, caps: &Caps) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lattice");
    for entry in catalog_groups(max_order, caps)? {
        let g = &entry.group;
        let subgroups = all_subgroups(g, caps)?;
        for p in prime_divisors(g.order() as u64) {
            let lattice = PIntersectionLattice::new(g, p)?;
            let nodes = lattice.nodes();
            let p_subs: Vec<_> = subgroups.iter().filter(|k| g.is_p_subgroup(k, p)).cloned().collect();
            let mut from_sylows = p_subgroups(g, p)?;
            from_sylows.sort();
            let mut exhaustive = p_subs.clone();
            exhaustive.sort();
            report.check(from_sylows == exhaustive, &entry.name, || format!("p = {p}"), || {
                "p-subgroups of the Sylow subgroups differ from the exhaustive list".into()
            });
            report.check(
                lattice.d_p() <= lattice.sylow_count() && lattice.d_p() as u32 <= lattice.exponent() + 1,
                &entry.name,
                || format!("p = {p}"),
                || format!("d_p = {} exceeds the Sylow count or exponent + 1", lattice.d_p()),
            );
            // depth lemma: K ⊋ H gives depth(K) < depth(H)
            for (i, h) in nodes.iter().enumerate() {
                let d = lattice.depths()[i];
                for k in p_subs.iter().filter(|k| h.is_subset(k)) {
                    let case = || format!("p = {p}, H = {:?}, K = {:?}", h.to_vec(), k.to_vec());
                    if k.is_trivial() {
                        continue;
                    }
                    match lattice.depth_of_p_subgroup(k) {
                        Ok(dk) => report.check(dk <= d && ((dk == d) == (h == k)), &entry.name, case, || {
                            format!("depth {dk} against depth {d}")
                        }),
                        Err(e) => report.fail(&entry.name, case(), e.to_string()),
                    }
                }
                // containment corollary
                for (j, h2) in nodes.iter().enumerate() {
                    if h.is_proper_subset(h2) {
                        let d2 = lattice.depths()[j];
                        report.check(d > d2, &entry.name, || format!("p = {p}, {:?} < {:?}", h.to_vec(), h2.to_vec()), || {
                            format!("depths {d} and {d2}")
                        });
                    }
                }
                // depth as a subgroup agrees with depth as an intersection
                if !h.is_trivial() {
                    let as_subgroup = lattice.depth_of_p_subgroup(h)?;
                    report.check(as_subgroup == d, &entry.name, || format!("p = {p}, H = {:?}", h.to_vec()), || {
                        format!("depth {as_subgroup} as a subgroup, {d} as an intersection")
                    });
                }
            }
            // uniqueness corollary
            for k in p_subs.iter().filter(|k| !k.is_trivial()) {
                let case = || format!("p = {p}, K = {:?}", k.to_vec());
                let result = lattice.depth_of_p_subgroup(k).and_then(|d| lattice.unique_containing_intersection(k, d));
                match result {
                    Ok(_) => report.pass(),
                    Err(e) => report.fail(&entry.name, case(), e.to_string()),
                }
            }
        }
    }
    Ok(report)
}

fn construction_for(name: &str, build: &Result<XBuild>, certificate: &Result<Option<crate::equivariant::Certificate>>) -> SuiteReport {
    let mut report = SuiteReport::new("construction");
    let build = match build {
        Ok(b) => b,
        Err(e) => {
            report.fail(name, "build".into(), e.to_string());
            return report;
        }
    };
    for comp in &build.components {
        let p = comp.prime;
        for check in &comp.checks {
            let detail = || {
                let mut s = format!("mod-{p} homology in degrees {:?}", check.nonzero_degrees);
                if check.euler_obstructed() {
                    s += &format!(
                        "; Weyl group of order {} acts freely, Euler characteristic {}",
                        check.weyl_order, check.euler_characteristic
                    );
                }
                s
            };
            report.check(check.p_acyclic, name, || format!("X_{p} fixed set of {:?}", check.subgroup), detail);
        }
    }
    report.check(build.cross_prime_free, name, || "cross-prime freeness".into(), || {
        "a p-subgroup fixes cells of another prime's component".into()
    });
    report.check(build.smith.passed, name, || "Smith acyclicity".into(), || {
        format!("{} of {} subgroup classes fail", build.smith.witnesses.len(), build.smith.checked)
    });
    report.check(build.acyclic(), name, || "integral acyclicity".into(), || {
        format!(
            "residual homology in degrees {:?} at dimension cap {}",
            build.completion.residual_degrees, build.dimension_cap
        )
    });
    match certificate {
        Ok(Some(_)) => report.pass(),
        Ok(None) => report.fail(name, "certificate".into(), "no certificate: X(G) is not acyclic".into()),
        Err(e) => report.fail(name, "certificate".into(), e.to_string()),
    }
    report
}

/// Designer complexes, Smith acyclicity and certificates on the construction groups.
pub fn construction(caps: &Caps) -> Result<SuiteReport> {
    let parts: Vec<SuiteReport> = CONSTRUCTION_GROUPS
        .par_iter()
        .map(|&name| -> Result<SuiteReport> {
            let g = Arc::new(catalog(name, caps)?);
            let build = build_x_report(&g, caps);
            let certificate = certified_upper_bound(&g, caps);
            Ok(construction_for(name, &build, &certificate))
        })
        .collect::<Result<_>>()?;
    let mut total = SuiteReport::new("construction");
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}

/// Runs a suite by name: `fixed-points`, `connectivity`, `construction`,
/// `lattice`, or `all`.
pub fn run_suite(name: &str, caps: &Caps) -> Result<Vec<SuiteReport>> {
    Ok(match name {
        "fixed-points" => vec![fixed_points(24, caps)?],
        "connectivity" => vec![connectivity(12, caps)?],
        "construction" => vec![construction(caps)?],
        "lattice" => vec![lattice(24, caps)?],
        "all" => vec![fixed_points(24, caps)?, connectivity(12, caps)?, lattice(24, caps)?, construction(caps)?],
        other => return Err(Error::Input(format!("unknown suite \"{other}\""))),
    })
}
