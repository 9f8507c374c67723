//! Sylow subgroups, p-intersections and Sylow depth.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::arith::{is_prime, p_part};
use crate::error::{Error, Result};
use crate::group::{subgroups_of, FiniteGroup, SubgroupSet};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// One Sylow `p`-subgroup, found by climbing normalizers.
///
/// Starting from the trivial subgroup, any `P` short of the full `p`-part has
/// `p | [N(P) : P]`, so some `x ∈ N(P) \ P` has `x^p ∈ P` and `⟨P, x⟩` is a
/// `p`-group `p` times larger.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<SubgroupSet> {
    require_prime(p)?;
    let (target, _) = p_part(g.order() as u64, p);
    let mut current = SubgroupSet::trivial(g.order());
    while (current.size() as u64) < target {
        let normalizer = g.normalizer(&current);
        let step = normalizer
            .elements()
            .find(|&x| !current.contains(x) && current.contains(g.pow(x, p)))
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "no p-element to adjoin above a {p}-subgroup of order {}",
                    current.size()
                ))
            })?;
        current = g.join_element(&current, step);
    }
    Ok(current)
}

/// All Sylow `p`-subgroups (the conjugacy orbit of one), sorted.
pub fn all_sylow_subgroups(g: &FiniteGroup, p: u64) -> Result<Vec<SubgroupSet>> {
    let p_sylow = sylow_subgroup(g, p)?;
    let orbit: BTreeSet<SubgroupSet> = (0..g.order()).map(|x| g.conjugate_subgroup(x, &p_sylow)).collect();
    let count = orbit.len();
    if count as u64 % p != 1 % p || !g.order().is_multiple_of(count) {
        return Err(Error::InvariantViolation(format!(
            "{count} Sylow {p}-subgroups in a group of order {}",
            g.order()
        )));
    }
    Ok(orbit.into_iter().collect())
}

/// Every `p`-subgroup of `g`, as the union of the subgroup sets of the Sylows.
///
/// Sorted by size then lexicographically; includes the trivial subgroup.
pub fn p_subgroups(g: &FiniteGroup, p: u64) -> Result<Vec<SubgroupSet>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p_sylow in all_sylow_subgroups(g, p)? {
        for h in subgroups_of(g, &p_sylow) {
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
    }
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The p-intersections of a group with their Sylow depths.
#[derive(Clone, Debug)]
pub struct PIntersectionLattice {
    prime: u64,
    sylow_order: u64,
    exponent: u32,
    sylow_count: usize,
    /// Sorted by decreasing size, then lexicographically.
    nodes: Vec<SubgroupSet>,
    /// Covering relations `(smaller, larger)` as node indices.
    edges: Vec<(usize, usize)>,
    depth: Vec<usize>,
    d_p: usize,
}

/// Serialized shape of a lattice.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeDump {
    pub prime: u64,
    pub nodes: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub depths: Vec<usize>,
    pub d_p: usize,
}

impl PIntersectionLattice {
    /// Closes the Sylow set under pairwise intersection and assigns depths
    /// by longest chain up to a Sylow.
    ///
    /// When `p ∤ |G|` the lattice is empty and `d_p = 0`.
    pub fn new(g: &FiniteGroup, p: u64) -> Result<Self> {
        require_prime(p)?;
        let (sylow_order, exponent) = p_part(g.order() as u64, p);
        if exponent == 0 {
            return Ok(PIntersectionLattice {
                prime: p,
                sylow_order,
                exponent,
                sylow_count: 1,
                nodes: Vec::new(),
                edges: Vec::new(),
                depth: Vec::new(),
                d_p: 0,
            });
        }
        let sylows = all_sylow_subgroups(g, p)?;
        let sylow_count = sylows.len();
        let mut seen: HashSet<SubgroupSet> = sylows.iter().cloned().collect();
        let mut nodes = sylows;
        let mut frontier = 0;
        // each new node only needs intersecting with everything known so far
        while frontier < nodes.len() {
            let h = nodes[frontier].clone();
            for k in 0..frontier {
                let meet = h.intersection(&nodes[k]);
                if seen.insert(meet.clone()) {
                    nodes.push(meet);
                }
            }
            frontier += 1;
        }
        nodes.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| a.cmp(b)));

        let n = nodes.len();
        let mut depth = vec![0usize; n];
        for i in 0..n {
            depth[i] = (0..i)
                .filter(|&j| nodes[i].is_proper_subset(&nodes[j]))
                .map(|j| depth[j] + 1)
                .max()
                .unwrap_or(1);
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..i {
                if nodes[i].is_proper_subset(&nodes[j])
                    && !(j + 1..i).any(|m| nodes[i].is_proper_subset(&nodes[m]) && nodes[m].is_proper_subset(&nodes[j]))
                {
                    edges.push((i, j));
                }
            }
        }
        let d_p = depth.iter().copied().max().unwrap_or(0);
        if d_p > sylow_count || d_p > exponent as usize + 1 {
            return Err(Error::InvariantViolation(format!(
                "d_{p} = {d_p} exceeds the Sylow count {sylow_count} or exponent {exponent}"
            )));
        }
        Ok(PIntersectionLattice { prime: p, sylow_order, exponent, sylow_count, nodes, edges, depth, d_p })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `p^s`, the order of a Sylow `p`-subgroup.
    pub fn sylow_order(&self) -> u64 {
        self.sylow_order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn sylow_count(&self) -> usize {
        self.sylow_count
    }

    pub fn nodes(&self) -> &[SubgroupSet] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    pub fn d_p(&self) -> usize {
        self.d_p
    }

    pub fn node_index(&self, h: &SubgroupSet) -> Option<usize> {
        self.nodes.iter().position(|n| n == h)
    }

    /// Depth of a p-intersection, `None` if `h` is not a node.
    pub fn node_depth(&self, h: &SubgroupSet) -> Option<usize> {
        self.node_index(h).map(|i| self.depth[i])
    }

    pub fn nodes_of_depth(&self, d: usize) -> impl Iterator<Item = &SubgroupSet> + '_ {
        self.nodes.iter().zip(&self.depth).filter(move |(_, &dd)| dd == d).map(|(h, _)| h)
    }

    fn check_p_subgroup(&self, k: &SubgroupSet) -> Result<()> {
        if !crate::arith::is_power_of(k.size() as u64, self.prime) {
            return Err(Error::Hypothesis(format!(
                "subgroup of order {} is not a {}-group",
                k.size(),
                self.prime
            )));
        }
        Ok(())
    }

    /// Maximal depth of a node containing `k`, for any `p`-subgroup `k`.
    fn containing_depth(&self, k: &SubgroupSet) -> Result<usize> {
        self.check_p_subgroup(k)?;
        self.nodes
            .iter()
            .zip(&self.depth)
            .filter(|(n, _)| k.is_subset(n))
            .map(|(_, &d)| d)
            .max()
            .ok_or_else(|| Error::InvariantViolation("p-subgroup lies in no Sylow subgroup".into()))
    }

    /// Depth of a nontrivial `p`-subgroup: the largest depth of a
    /// p-intersection containing it.
    pub fn depth_of_p_subgroup(&self, k: &SubgroupSet) -> Result<usize> {
        if k.is_trivial() {
            return Err(Error::Hypothesis("depth is defined for nontrivial p-subgroups".into()));
        }
        self.containing_depth(k)
    }

    /// The unique p-intersection of depth `d` containing `k`, where `k` has depth `d`.
    pub fn unique_containing_intersection(&self, k: &SubgroupSet, d: usize) -> Result<&SubgroupSet> {
        let actual = self.containing_depth(k)?;
        if actual != d {
            return Err(Error::Hypothesis(format!("subgroup has depth {actual}, not {d}")));
        }
        let mut candidates = self.nodes_of_depth(d).filter(|n| k.is_subset(n));
        match (candidates.next(), candidates.next()) {
            (Some(h), None) => Ok(h),
            (None, _) => Err(Error::InvariantViolation(format!("no depth-{d} p-intersection contains the subgroup"))),
            (Some(_), Some(_)) => Err(Error::InvariantViolation(format!(
                "two depth-{d} p-intersections contain a subgroup of depth {d}"
            ))),
        }
    }

    pub fn dump(&self) -> LatticeDump {
        LatticeDump {
            prime: self.prime,
            nodes: self.nodes.iter().map(SubgroupSet::to_vec).collect(),
            edges: self.edges.clone(),
            depths: self.depth.clone(),
            d_p: self.d_p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::group::{all_subgroups, catalog};

    fn group(name: &str) -> FiniteGroup {
        catalog(name, &Caps::default()).unwrap()
    }

    #[test]
    fn sylows_match_exhaustive_scan() {
        let caps = Caps::default();
        for name in ["S3", "A4", "S4", "D6", "C12", "Q8", "C2xA4", "C3xS3"] {
            let g = group(name);
            let subs = all_subgroups(&g, &caps).unwrap();
            for p in crate::arith::prime_divisors(g.order() as u64) {
                let (pp, _) = p_part(g.order() as u64, p);
                let oracle: BTreeSet<_> = subs.iter().filter(|h| h.size() as u64 == pp).cloned().collect();
                let found: BTreeSet<_> = all_sylow_subgroups(&g, p).unwrap().into_iter().collect();
                assert_eq!(found, oracle, "{name} p={p}");
            }
        }
    }

    #[test]
    fn sylow_examples() {
        let s3 = group("S3");
        assert_eq!(sylow_subgroup(&s3, 3).unwrap().size(), 3);
        assert!(sylow_subgroup(&s3, 5).unwrap().is_trivial());
        assert!(matches!(sylow_subgroup(&s3, 4), Err(Error::NotPrime(4))));
        let a4 = group("A4");
        let v4 = sylow_subgroup(&a4, 2).unwrap();
        assert_eq!(v4.size(), 4);
        assert!((1..12).filter(|x| v4.contains(*x)).all(|x| a4.element_order(x) == 2));
        assert_eq!(all_sylow_subgroups(&s3, 2).unwrap().len(), 3);
        assert_eq!(all_sylow_subgroups(&s3, 3).unwrap().len(), 1);
        assert_eq!(all_sylow_subgroups(&a4, 3).unwrap().len(), 4);
    }

    #[test]
    fn lattice_examples() {
        let s3 = group("S3");
        let l = PIntersectionLattice::new(&s3, 2).unwrap();
        assert_eq!(l.nodes().len(), 4);
        assert_eq!(l.depths(), &[1, 1, 1, 2]);
        assert_eq!(l.d_p(), 2);
        assert_eq!(l.edges().len(), 3);
        assert_eq!(l.node_depth(&SubgroupSet::trivial(6)), Some(2));

        let c12 = PIntersectionLattice::new(&group("C12"), 2).unwrap();
        assert_eq!(c12.nodes().len(), 1);
        assert_eq!(c12.nodes()[0].size(), 4);
        assert_eq!(c12.d_p(), 1);

        let empty = PIntersectionLattice::new(&s3, 5).unwrap();
        assert!(empty.nodes().is_empty());
        assert_eq!(empty.d_p(), 0);
    }

    #[test]
    fn depth_queries() {
        let s3 = group("S3");
        let l = PIntersectionLattice::new(&s3, 2).unwrap();
        let t = l.nodes()[0].clone();
        assert_eq!(l.depth_of_p_subgroup(&t).unwrap(), 1);
        assert_eq!(l.unique_containing_intersection(&t, 1).unwrap(), &t);
        assert!(l.depth_of_p_subgroup(&SubgroupSet::trivial(6)).is_err());
        assert!(l.depth_of_p_subgroup(&sylow_subgroup(&s3, 3).unwrap()).is_err());
        assert!(l.unique_containing_intersection(&t, 2).is_err());

        let a4 = group("A4");
        let l3 = PIntersectionLattice::new(&a4, 3).unwrap();
        let c3 = sylow_subgroup(&a4, 3).unwrap();
        assert_eq!(l3.depth_of_p_subgroup(&c3).unwrap(), 1);
        assert_eq!(l3.unique_containing_intersection(&c3, 1).unwrap(), &c3);
        assert_eq!(l3.d_p(), 2);
    }

    #[test]
    fn p_subgroups_of_s4() {
        let s4 = group("S4");
        // 1 trivial, 9 of order 2, 7 of order 4, 3 of order 8
        let twos = p_subgroups(&s4, 2).unwrap();
        assert_eq!(twos.len(), 20);
        assert_eq!(p_subgroups(&s4, 3).unwrap().len(), 5);
    }
}
