use std::collections::BTreeSet;

use acatlab::arith::{p_part, prime_divisors};
use acatlab::bounds::{
    a_special, largest_prime_power, lower_bound, proof_inequality_check, range_consistency, sharpness, upper_bound,
};
use acatlab::group::{all_subgroups, catalog, catalog_groups, GroupSpec, Permutation};
use acatlab::sylow::{all_sylow_subgroups, sylow_subgroup, PIntersectionLattice};
use acatlab::{AcatReport, Caps, Error, FiniteGroup, Sharpness, SubgroupSet};
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

/// Closure of a set of permutations by breadth-first search on image arrays.
fn closure_size(gens: &[Vec<usize>]) -> usize {
    let degree = gens[0].len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![(0..degree).collect::<Vec<_>>()];
    seen.insert(queue[0].clone());
    while let Some(x) = queue.pop() {
        for s in gens {
            let y: Vec<usize> = x.iter().map(|&i| s[i]).collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}

fn brute_normalizer(g: &FiniteGroup, h: &SubgroupSet) -> usize {
    (0..g.order())
        .filter(|&x| h.elements().all(|k| h.contains(g.mul(g.mul(x, k), g.inv(x)))))
        .count()
}

#[test]
fn permutation_groups() {
    let c = caps();
    let build = |cycles: &[&str], degree: usize| {
        let gens: Vec<Permutation> = cycles.iter().map(|s| Permutation::parse_cycles(s, degree).unwrap()).collect();
        FiniteGroup::from_permutations(&gens, &c).unwrap()
    };
    assert_eq!(build(&["(1 2)", "(1 2 3)"], 3).order(), 6);
    assert_eq!(build(&["(1 2 3 4)"], 4).order(), 4);
    let a4 = build(&["(1 2)(3 4)", "(1 3)(2 4)", "(1 2 3)"], 4);
    assert_eq!(a4.order(), closure_size(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![1, 2, 0, 3]]));
    assert_eq!(a4.order(), 12);
    assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
    assert!(Permutation::from_one_line(&[1, 1]).is_err());
    let tiny = Caps { order: 10, ..caps() };
    let gens = [Permutation::parse_cycles("(1 2 3 4)", 4).unwrap(), Permutation::parse_cycles("(1 2)", 4).unwrap()];
    assert!(matches!(FiniteGroup::from_permutations(&gens, &tiny), Err(Error::CapExceeded { .. })));
}

#[test]
fn cayley_tables() {
    let c = caps();
    assert_eq!(FiniteGroup::from_cayley_table(&[vec![0]], &c).unwrap().order(), 1);
    let z6: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
    let g = FiniteGroup::from_cayley_table(&z6, &c).unwrap();
    assert!(g.is_abelian());
    assert_eq!(g.element_order(1), 6);
    let err = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 1]], &c).unwrap_err();
    assert_eq!(err.to_string(), "invalid group: no inverse for element 1");
    // identity stored elsewhere is moved to index 0
    let shifted = vec![vec![1, 0], vec![0, 1]];
    let g = FiniteGroup::from_cayley_table(&shifted, &c).unwrap();
    assert_eq!(g.mul(0, 1), 1);
    assert_eq!(g.label(0), "1");
}

#[test]
fn closures_normalizers_quotients() {
    let c = caps();
    let s3 = GroupSpec::parse(r#"{"type":"permutation","generators":[[2,1,3],[2,3,1]]}"#)
        .unwrap()
        .build(&c)
        .unwrap();
    let sizes: BTreeSet<usize> = (1..6).map(|x| s3.subgroup_closure([x]).size()).collect();
    assert_eq!(sizes, BTreeSet::from([2, 3]));
    let rotation = (1..6).find(|&x| s3.element_order(x) == 3).unwrap();
    let reflection = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
    assert_eq!(s3.subgroup_closure([rotation, reflection]).size(), 6);
    let r = s3.subgroup_closure([rotation]);
    let t = s3.subgroup_closure([reflection]);
    assert_eq!(s3.normalizer(&r).size(), 6);
    assert_eq!(s3.normalizer(&t), t);
    assert_eq!(s3.normalizer(&SubgroupSet::trivial(6)).size(), 6);
    assert_eq!(s3.quotient(&r).unwrap().group.order(), 2);
    assert_eq!(s3.quotient(&SubgroupSet::trivial(6)).unwrap().group.order(), 6);
    assert_eq!(s3.quotient(&SubgroupSet::whole(6)).unwrap().group.order(), 1);
    assert!(matches!(s3.quotient(&t), Err(Error::NotNormal { .. })));
    for (name, order) in [("C30", 30), ("D5", 10), ("S4", 24), ("C2xQ8", 16)] {
        assert_eq!(catalog(name, &c).unwrap().order(), order);
    }
    assert!(catalog("X7", &c).is_err());
}

#[test]
fn normalizers_match_conjugation_scan() {
    let c = caps();
    for entry in catalog_groups(16, &c).unwrap() {
        for h in all_subgroups(&entry.group, &c).unwrap() {
            assert_eq!(entry.group.normalizer(&h).size(), brute_normalizer(&entry.group, &h), "{}", entry.name);
        }
    }
}

#[test]
fn sylow_subgroups_match_exhaustive_scan() {
    let c = caps();
    for entry in catalog_groups(24, &c).unwrap() {
        let g = &entry.group;
        let subs = all_subgroups(g, &c).unwrap();
        for p in prime_divisors(g.order() as u64) {
            let (ps, _) = p_part(g.order() as u64, p);
            let mut oracle: Vec<_> = subs.iter().filter(|h| h.size() as u64 == ps).cloned().collect();
            oracle.sort();
            let mut found = all_sylow_subgroups(g, p).unwrap();
            found.sort();
            assert_eq!(found, oracle, "{} p = {p}", entry.name);
            let np = found.len() as u64;
            assert_eq!(np % p, 1);
            assert_eq!((g.order() as u64 / ps) % np, 0);
            assert!(found.contains(&sylow_subgroup(g, p).unwrap()));
        }
    }
}

#[test]
fn sylow_examples() {
    let c = caps();
    let s3 = catalog("S3", &c).unwrap();
    let a4 = catalog("A4", &c).unwrap();
    assert_eq!(sylow_subgroup(&s3, 3).unwrap().size(), 3);
    assert!(sylow_subgroup(&s3, 5).unwrap().is_trivial());
    let v4 = sylow_subgroup(&a4, 2).unwrap();
    assert_eq!(v4.size(), 4);
    assert!((1..12).filter(|&x| v4.contains(x)).all(|x| a4.element_order(x) == 2));
    assert_eq!(all_sylow_subgroups(&s3, 2).unwrap().len(), 3);
    assert_eq!(all_sylow_subgroups(&s3, 3).unwrap().len(), 1);
    assert_eq!(all_sylow_subgroups(&a4, 3).unwrap().len(), 4);

    let lattice = PIntersectionLattice::new(&s3, 2).unwrap();
    let mut depths = lattice.depths().to_vec();
    depths.sort();
    assert_eq!((lattice.nodes().len(), depths, lattice.d_p()), (4, vec![1, 1, 1, 2], 2));
    let trivial = SubgroupSet::trivial(6);
    assert_eq!(lattice.node_depth(&trivial), Some(2));
    assert!(lattice.depth_of_p_subgroup(&trivial).is_err());
    let t = &lattice.nodes()[lattice.depths().iter().position(|&d| d == 1).unwrap()];
    assert_eq!(lattice.depth_of_p_subgroup(t).unwrap(), 1);
    assert_eq!(lattice.unique_containing_intersection(t, 1).unwrap(), t);
    let three = sylow_subgroup(&s3, 3).unwrap();
    assert!(lattice.depth_of_p_subgroup(&three).is_err());

    let c12 = PIntersectionLattice::new(&catalog("C12", &c).unwrap(), 2).unwrap();
    assert_eq!((c12.nodes().len(), c12.nodes()[0].size(), c12.d_p()), (1, 4, 1));
    let empty = PIntersectionLattice::new(&s3, 5).unwrap();
    assert_eq!((empty.nodes().len(), empty.d_p()), (0, 0));

    let a4_3 = PIntersectionLattice::new(&a4, 3).unwrap();
    for p in all_sylow_subgroups(&a4, 3).unwrap() {
        assert_eq!(a4_3.depth_of_p_subgroup(&p).unwrap(), 1);
        assert_eq!(a4_3.unique_containing_intersection(&p, 1).unwrap(), &p);
    }
}

/// Lattice by closing the Sylows under intersection, with depth as the
/// longest strictly decreasing chain starting at a Sylow.
fn brute_lattice(g: &FiniteGroup, p: u64) -> (BTreeSet<Vec<usize>>, usize) {
    let sylows: Vec<SubgroupSet> = all_sylow_subgroups(g, p).unwrap();
    if sylows[0].is_trivial() {
        return (BTreeSet::new(), 0);
    }
    let mut nodes: Vec<SubgroupSet> = sylows.clone();
    let mut i = 0;
    while i < nodes.len() {
        for j in 0..nodes.len() {
            let meet = nodes[i].intersection(&nodes[j]);
            if !nodes.contains(&meet) {
                nodes.push(meet);
            }
        }
        i += 1;
    }
    let mut depth: Vec<usize> = nodes.iter().map(|n| usize::from(sylows.contains(n))).collect();
    for _ in 0..nodes.len() {
        for a in 0..nodes.len() {
            for b in 0..nodes.len() {
                if nodes[a].is_proper_subset(&nodes[b]) && depth[b] > 0 {
                    depth[a] = depth[a].max(depth[b] + 1);
                }
            }
        }
    }
    (nodes.iter().map(SubgroupSet::to_vec).collect(), depth.into_iter().max().unwrap_or(0))
}

#[test]
fn lattices_match_brute_force() {
    let c = caps();
    for entry in catalog_groups(24, &c).unwrap() {
        for p in [2, 3, 5, 7] {
            let lattice = PIntersectionLattice::new(&entry.group, p).unwrap();
            let (nodes, d) = brute_lattice(&entry.group, p);
            let found: BTreeSet<Vec<usize>> = lattice.nodes().iter().map(SubgroupSet::to_vec).collect();
            assert_eq!(found, nodes, "{} p = {p}", entry.name);
            assert_eq!(lattice.d_p(), d, "{} p = {p}", entry.name);
            assert!(d <= lattice.sylow_count());
            assert!(d as u32 <= lattice.exponent() + 1);
        }
    }
}

#[test]
fn bound_examples() {
    let c = caps();
    let g = |name: &str| catalog(name, &c).unwrap();
    assert_eq!(lower_bound(&g("C6")).unwrap(), 5);
    assert_eq!(lower_bound(&g("S3")).unwrap(), 5);
    assert_eq!(lower_bound(&g("C30")).unwrap(), 9);
    assert_eq!(lower_bound(&FiniteGroup::trivial()).unwrap(), 0);
    assert_eq!(upper_bound(&g("C45")), 26);
    assert_eq!(upper_bound(&g("S3")), 5);
    assert_eq!(upper_bound(&g("C30")), 14);
    assert_eq!(largest_prime_power(45), 9);
    for name in ["C8", "Q8", "C9", "C2xC2"] {
        assert_eq!(a_special(&g(name)).unwrap(), Some(1), "{name}");
    }
    assert_eq!(a_special(&g("S3")).unwrap(), Some(2));
    assert_eq!(a_special(&g("C30")).unwrap(), None);
    assert_eq!(sharpness(&g("C8")).unwrap(), Sharpness::Sharp);
    assert_eq!(sharpness(&g("C12")).unwrap(), Sharpness::Unknown);
    assert_eq!(sharpness(&g("C30")).unwrap(), Sharpness::NotSharp);
    assert!(range_consistency(&g("C30")).unwrap());
    assert!(range_consistency(&g("S3")).unwrap());
    assert!(matches!(range_consistency(&g("C4")), Err(Error::Hypothesis(_))));
    assert!(proof_inequality_check(&g("C30")).unwrap());
    assert!(proof_inequality_check(&g("A4")).unwrap());

    let c8 = AcatReport::analyze(&g("C8"), "C8").unwrap();
    assert_eq!((c8.exact, c8.range_consistency), (Some(7), None));
    let c30 = AcatReport::analyze(&g("C30"), "C30").unwrap();
    assert_eq!((c30.q, c30.lower, c30.upper, c30.exact), (5, 9, 14, None));
    assert_eq!(c30.d_p_list(), "2:1,3:1,5:1");
}

#[test]
fn lower_bound_matches_direct_normalizers() {
    let c = caps();
    for entry in catalog_groups(24, &c).unwrap() {
        let g = &entry.group;
        let expected = prime_divisors(g.order() as u64)
            .into_iter()
            .map(|p| {
                let sylow = sylow_subgroup(g, p).unwrap();
                let ps = sylow.size() as u64;
                let whole = if brute_normalizer(g, &sylow) > sylow.size() { 2 * ps - 1 } else { ps - 1 };
                whole.max(2 * (ps / p) - 1)
            })
            .max()
            .unwrap();
        let report = AcatReport::analyze(g, entry.name.as_str()).unwrap();
        assert_eq!(report.lower, expected, "{}", entry.name);
        assert!(report.lower <= report.upper && report.upper < g.order() as u64);
        if report.range_consistency.is_some() {
            assert_eq!(report.range_consistency, Some(true), "{}", entry.name);
            assert_eq!(report.proof_inequality, Some(true), "{}", entry.name);
        }
    }
}

fn relabelled(g: &FiniteGroup, perm: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            table[perm[a]][perm[b]] = perm[g.mul(a, b)];
        }
    }
    table
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_survive_relabelling(
        name in prop::sample::select(vec!["S3", "C12", "D6", "A4", "Q8", "C2xC6", "D5"]),
        seed in any::<u64>(),
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let c = caps();
        let g = catalog(name, &c).unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = FiniteGroup::from_cayley_table(&relabelled(&g, &perm), &c).unwrap();
        let a = AcatReport::analyze(&g, name).unwrap();
        let b = AcatReport::analyze(&h, name).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(all_subgroups(&g, &c).unwrap().len(), all_subgroups(&h, &c).unwrap().len());
    }

    #[test]
    fn closure_is_a_subgroup(name in prop::sample::select(vec!["S4", "D6", "C2xQ8", "A4"]), seed in prop::collection::vec(0usize..24, 0..3)) {
        let g = catalog(name, &caps()).unwrap();
        let seed: Vec<usize> = seed.into_iter().map(|x| x % g.order()).collect();
        let h = g.subgroup_closure(seed.iter().copied());
        prop_assert!(g.is_subgroup(&h));
        prop_assert!(seed.iter().all(|&x| h.contains(x)));
        prop_assert_eq!(g.order() % h.size(), 0);
    }
}
