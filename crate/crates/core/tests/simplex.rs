use acatlab::group::{all_subgroups, catalog, catalog_groups, FiniteGroup, SubgroupSet};
use acatlab::simplex::{verify_fixed_point_formula, Connectivity, SkeletalComplex};
use acatlab::Caps;
use proptest::prelude::*;

/// Every nonempty subset of `G` of size at most `n + 1` that is closed under
/// right multiplication by `H`, found by scanning all bitmasks.
fn invariant_subsets(g: &FiniteGroup, h: &SubgroupSet, n: usize) -> Vec<Vec<usize>> {
    let order = g.order();
    let mut out = Vec::new();
    for mask in 1u32..(1 << order) {
        if mask.count_ones() as usize > n + 1 {
            continue;
        }
        let members: Vec<usize> = (0..order).filter(|&i| mask & (1 << i) != 0).collect();
        let closed = members.iter().all(|&s| h.elements().all(|x| mask & (1 << g.mul(s, x)) != 0));
        if closed {
            out.push(members);
        }
    }
    out.sort();
    out
}

fn sorted_dump(c: &SkeletalComplex) -> Vec<Vec<usize>> {
    let mut faces = c.dump();
    faces.sort();
    faces
}

#[test]
fn fixed_faces_match_brute_force() {
    let caps = Caps::default();
    for entry in catalog_groups(10, &caps).unwrap() {
        let g = &entry.group;
        for h in all_subgroups(g, &caps).unwrap() {
            for n in 0..g.order() {
                let fixed = SkeletalComplex::fixed_subcomplex(g, &h, n, &caps).unwrap();
                assert_eq!(sorted_dump(&fixed), invariant_subsets(g, &h, n), "{} H = {:?} n = {n}", entry.name, h.to_vec());
                assert_eq!(fixed.dimension(), ((n + 1) / h.size()) as i64 - 1);
            }
        }
    }
}

#[test]
fn skeleton_face_counts() {
    let caps = Caps::default();
    let s = SkeletalComplex::skeleton(6, 2, &caps).unwrap();
    assert_eq!((s.faces_in_dim(0), s.faces_in_dim(1), s.faces_in_dim(2)), (6, 15, 20));
    assert_eq!(s.dimension(), 2);
    assert!(!s.is_full_simplex());
    assert!(SkeletalComplex::skeleton(4, 3, &caps).unwrap().is_full_simplex());
    assert_eq!(SkeletalComplex::empty(4).dimension(), -1);
    assert!(SkeletalComplex::skeleton(40, 20, &caps).is_err());
}

#[test]
fn connectivity_of_fixed_sets() {
    let caps = Caps::default();
    let c6 = catalog("C6", &caps).unwrap();
    let c2 = all_subgroups(&c6, &caps).unwrap().into_iter().find(|h| h.size() == 2).unwrap();
    let expect = [(0, -2), (1, -1), (2, -1), (3, 0), (4, 0)];
    for (n, c) in expect {
        let fixed = SkeletalComplex::fixed_subcomplex(&c6, &c2, n, &caps).unwrap();
        assert_eq!(fixed.connectivity(&caps).unwrap(), Connectivity::Finite(c), "n = {n}");
    }
    let full = SkeletalComplex::fixed_subcomplex(&c6, &c2, 5, &caps).unwrap();
    assert_eq!(full.connectivity(&caps).unwrap(), Connectivity::ContractibleByFullness);

    // a path is acyclic without being a simplex
    let path = SkeletalComplex::from_facets(3, &[vec![0, 1], vec![1, 2]], &caps).unwrap();
    assert_eq!(path.connectivity(&caps).unwrap(), Connectivity::Acyclic);
}

#[test]
fn fixed_point_formula_on_small_groups() {
    let caps = Caps::default();
    for name in ["S3", "Q8", "D4", "A4", "C2xC2xC2"] {
        let g = catalog(name, &caps).unwrap();
        for h in all_subgroups(&g, &caps).unwrap() {
            let iso = verify_fixed_point_formula(&g, &h, 0..g.order(), &caps).unwrap();
            assert_eq!(iso.checked_n.len(), g.order(), "{name}");
            assert!(iso.skipped_n.is_empty());
            assert_eq!(iso.target_dimension(g.order() - 1), h.index() as i64 - 1);
            let face: Vec<usize> = h.to_vec();
            assert_eq!(iso.forward(&face), vec![0]);
            assert_eq!(iso.backward(&[0]), face);
        }
    }
}

#[test]
fn oversized_ranges_are_skipped() {
    let caps = Caps { faces: 100, ..Caps::default() };
    let g = catalog("C12", &caps).unwrap();
    let iso = verify_fixed_point_formula(&g, &SubgroupSet::trivial(12), 0..12, &caps).unwrap();
    assert!(!iso.skipped_n.is_empty());
    assert!(iso.checked_n.contains(&1));
}

fn group_subgroup_n() -> impl Strategy<Value = (String, usize, usize)> {
    prop::sample::select(vec!["C4", "C6", "S3", "C2xC2", "D4", "Q8", "C8", "D5", "C10"])
        .prop_flat_map(|name| (Just(name.to_string()), 0usize..16, 0usize..10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fixed_subcomplex_is_a_skeleton_on_cosets((name, pick, n) in group_subgroup_n()) {
        let caps = Caps::default();
        let g = catalog(&name, &caps).unwrap();
        let subs = all_subgroups(&g, &caps).unwrap();
        let h = &subs[pick % subs.len()];
        let n = n % g.order();
        let fixed = SkeletalComplex::fixed_subcomplex(&g, h, n, &caps).unwrap();
        let k = (n + 1) / h.size();
        let model = SkeletalComplex::skeleton(h.index(), k.saturating_sub(1), &caps).unwrap();
        if k == 0 {
            prop_assert_eq!(fixed.face_count(), 0);
        } else {
            for d in 0..k {
                prop_assert_eq!(fixed.faces_in_dim(d), model.faces_in_dim(d));
            }
        }
        // every face is a union of whole cosets of the right size
        for face in fixed.dump() {
            prop_assert_eq!(face.len() % h.size(), 0);
            for &s in &face {
                for x in h.elements() {
                    prop_assert!(face.binary_search(&g.mul(s, x)).is_ok());
                }
            }
        }
    }
}
