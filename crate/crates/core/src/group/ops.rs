use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

use super::{FiniteGroup, SubgroupSet};

/// Partition of a group into left cosets `gH`.
///
/// Cosets are numbered by first appearance in element order, so coset 0 is
/// `H` itself and each representative is the smallest element of its coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    coset_of: Vec<u32>,
    reps: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g] as usize
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Elements of a coset in increasing order.
    pub fn members(&self, coset: usize) -> &[usize] {
        &self.members[coset]
    }
}

/// A quotient `G/N` with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
}

impl FiniteGroup {
    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: impl IntoIterator<Item = usize>) -> SubgroupSet {
        let gens: Vec<usize> = seed.into_iter().filter(|&g| g != 0).collect();
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        let mut queue = vec![0usize];
        let mut cursor = 0;
        while cursor < queue.len() {
            let x = queue[cursor];
            cursor += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if !members.put(y) {
                    queue.push(y);
                }
            }
        }
        SubgroupSet::from_bits(members)
    }

    /// Closure of `h ∪ {x}`, reusing the members of `h`.
    pub fn join_element(&self, h: &SubgroupSet, x: usize) -> SubgroupSet {
        if h.contains(x) {
            return h.clone();
        }
        self.subgroup_closure(h.elements().chain([x]))
    }

    pub fn is_subgroup(&self, set: &SubgroupSet) -> bool {
        set.ambient_order() == self.order()
            && set.contains(0)
            && set.elements().all(|a| set.elements().all(|b| set.contains(self.mul(a, b))))
    }

    /// `x H x⁻¹`
    pub fn conjugate_subgroup(&self, x: usize, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_elements(self.order(), h.elements().map(|g| self.conjugate(x, g)))
    }

    pub fn normalizer(&self, h: &SubgroupSet) -> SubgroupSet {
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in 0..self.order() {
            if h.elements().all(|g| h.contains(self.conjugate(x, g))) {
                members.insert(x);
            }
        }
        SubgroupSet::from_bits(members)
    }

    /// The first element whose conjugation moves `h`, if any.
    pub fn normality_witness(&self, h: &SubgroupSet) -> Option<usize> {
        (0..self.order()).find(|&x| h.elements().any(|g| !h.contains(self.conjugate(x, g))))
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        self.normality_witness(h).is_none()
    }

    pub fn left_cosets(&self, h: &SubgroupSet) -> CosetTable {
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(h.index());
        let mut members = Vec::with_capacity(h.index());
        for g in 0..n {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            let mut elems: Vec<usize> = h.elements().map(|k| self.mul(g, k)).collect();
            elems.sort_unstable();
            for &x in &elems {
                coset_of[x] = c;
            }
            reps.push(g);
            members.push(elems);
        }
        CosetTable { coset_of, reps, members }
    }

    /// `G/N` for a normal subgroup `N`.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<Quotient> {
        if let Some(conjugator) = self.normality_witness(n) {
            return Err(Error::NotNormal { conjugator });
        }
        let cosets = self.left_cosets(n);
        let k = cosets.count();
        let mut mul = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                let prod = self.mul(cosets.representative(a), cosets.representative(b));
                mul[a * k + b] = cosets.coset_of(prod) as u32;
            }
        }
        let labels = cosets
            .representatives()
            .iter()
            .map(|&r| format!("{}N", self.label(r)))
            .collect();
        let group = FiniteGroup::from_trusted_table(k, mul, Some(labels));
        let projection = (0..self.order()).map(|g| cosets.coset_of(g)).collect();
        Ok(Quotient { group, projection })
    }

    /// A subgroup as a group in its own right, with the embedding into `self`.
    ///
    /// Elements keep their relative order, so the identity stays at 0.
    pub fn subgroup_as_group(&self, h: &SubgroupSet) -> (FiniteGroup, Vec<usize>) {
        let embedding = h.to_vec();
        let mut local = vec![u32::MAX; self.order()];
        for (i, &g) in embedding.iter().enumerate() {
            local[g] = i as u32;
        }
        let k = embedding.len();
        let mut mul = vec![0u32; k * k];
        for (a, &ga) in embedding.iter().enumerate() {
            for (b, &gb) in embedding.iter().enumerate() {
                mul[a * k + b] = local[self.mul(ga, gb)];
            }
        }
        let labels = embedding.iter().map(|&g| self.label(g)).collect();
        (FiniteGroup::from_trusted_table(k, mul, Some(labels)), embedding)
    }

    /// True when `h` has `p`-power order (the trivial subgroup included).
    pub fn is_p_subgroup(&self, h: &SubgroupSet, p: u64) -> bool {
        crate::arith::is_power_of(h.size() as u64, p)
    }
}
