use std::collections::HashSet;

use crate::config::Caps;
use crate::error::Result;

use super::{FiniteGroup, SubgroupSet};

/// Every subgroup of `g`, by exhaustive join-closure.
///
/// This is the brute-force oracle and refuses groups above
/// `caps.subgroup_oracle`. Output is sorted by size, then lexicographically.
pub fn all_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    caps.check("subgroup oracle order", g.order(), caps.subgroup_oracle)?;
    Ok(subgroups_of(g, &SubgroupSet::whole(g.order())))
}

/// Every subgroup of `g` contained in `h`, sorted by size then lexicographically.
///
/// Starting from the trivial subgroup, each known subgroup is joined with
/// each element of `h` until nothing new appears.
pub fn subgroups_of(g: &FiniteGroup, h: &SubgroupSet) -> Vec<SubgroupSet> {
    let trivial = SubgroupSet::trivial(g.order());
    let mut seen: HashSet<SubgroupSet> = HashSet::from([trivial.clone()]);
    let mut queue = vec![trivial];
    let mut cursor = 0;
    while cursor < queue.len() {
        let k = queue[cursor].clone();
        cursor += 1;
        for x in h.elements() {
            if k.contains(x) {
                continue;
            }
            let joined = g.join_element(&k, x);
            if seen.insert(joined.clone()) {
                queue.push(joined);
            }
        }
    }
    queue.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    queue
}

/// First member, in the given order, of each `G`-conjugacy class present in `subgroups`.
pub fn conjugacy_class_representatives(g: &FiniteGroup, subgroups: &[SubgroupSet]) -> Vec<SubgroupSet> {
    let mut covered: HashSet<SubgroupSet> = HashSet::new();
    let mut reps = Vec::new();
    for h in subgroups {
        if covered.contains(h) {
            continue;
        }
        for x in 0..g.order() {
            covered.insert(g.conjugate_subgroup(x, h));
        }
        reps.push(h.clone());
    }
    reps
}
