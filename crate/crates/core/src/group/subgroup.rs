use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of a group's elements stored as a dense membership bitset.
///
/// Values produced by the crate's constructors are always subgroups; the
/// raw constructor is crate-private so the invariant cannot be broken from
/// outside.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    members: FixedBitSet,
    size: usize,
}

impl SubgroupSet {
    pub(crate) fn from_bits(members: FixedBitSet) -> Self {
        let size = members.count_ones(..);
        assert!(
            size > 0 && members.len().is_multiple_of(size),
            "subgroup of size {size} in a group of order {}",
            members.len()
        );
        SubgroupSet { members, size }
    }

    pub(crate) fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut members = FixedBitSet::with_capacity(order);
        for g in elements {
            members.insert(g);
        }
        Self::from_bits(members)
    }

    pub fn trivial(order: usize) -> Self {
        Self::from_elements(order, [0])
    }

    pub fn whole(order: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(order);
        members.insert_range(..);
        Self::from_bits(members)
    }

    /// Order of the ambient group.
    pub fn ambient_order(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self) -> usize {
        self.ambient_order() / self.size
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.ambient_order()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        let mut bits = self.members.clone();
        bits.intersect_with(&other.members);
        Self::from_bits(bits)
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_proper_subset(&self, other: &SubgroupSet) -> bool {
        self.size < other.size && self.is_subset(other)
    }
}

/// Lexicographic order on the sorted element lists.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupSet{:?}", self.to_vec())
    }
}
