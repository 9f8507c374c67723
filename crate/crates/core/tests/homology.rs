use acatlab::arith::binomial;
use acatlab::homology::{
    homology, invariant_factors, is_acyclic, is_p_acyclic, rank_mod_p, smith_normal_form, verify_certificate,
    ChainComplex, Coefficients, SparseMatrix,
};
use acatlab::simplex::SkeletalComplex;
use acatlab::Caps;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn rp2() -> SkeletalComplex {
    let facets: Vec<Vec<usize>> = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ]
    .iter()
    .map(|f| f.iter().map(|v| v - 1).collect())
    .collect();
    SkeletalComplex::from_facets(6, &facets, &Caps::default()).unwrap()
}

/// Determinant by cofactor expansion; fine for the tiny minors used here.
fn det(m: &[Vec<i64>]) -> BigInt {
    if m.len() == 1 {
        return BigInt::from(m[0][0]);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            BigInt::from(sign * m[0][j]) * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Invariant factors from determinantal divisors: `d₁⋯d_k = gcd of k×k minors`.
fn factors_by_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::from(0);
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == BigInt::from(0) {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

#[test]
fn smith_examples() {
    let identity = smith_normal_form(&[vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(identity.invariant_factors, vec![BigInt::from(1), BigInt::from(1)]);
    let diag = smith_normal_form(&[vec![2, 0], vec![0, 3]]).unwrap();
    assert_eq!(diag.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    assert!(smith_normal_form(&[vec![0, 0], vec![0, 0]]).unwrap().invariant_factors.is_empty());
}

#[test]
fn smith_handles_growth() {
    // entries near the i64 limit force the arbitrary-precision path
    let big = i64::MAX / 3;
    let a = vec![vec![big, big - 1], vec![big - 2, big - 7]];
    let form = smith_normal_form(&a).unwrap();
    verify_certificate(&a, &form).unwrap();
    assert_eq!(form.invariant_factors, factors_by_minors(&a));
}

#[test]
fn simplicial_examples() {
    let caps = Caps::default();
    let points = SkeletalComplex::skeleton(2, 0, &caps).unwrap();
    let cc = points.chain_complex(Coefficients::Integers, true).unwrap();
    assert_eq!(cc.boundary(0).unwrap().to_dense(), vec![vec![1, 1]]);
    assert_eq!(homology(&cc).unwrap().rank(0), 1);
    assert!(!is_p_acyclic(&cc, 2).unwrap());

    let triangle = SkeletalComplex::skeleton(3, 1, &caps).unwrap();
    let h = homology(&triangle.chain_complex(Coefficients::Integers, true).unwrap()).unwrap();
    assert_eq!((h.nonzero_degrees(), h.rank(1)), (vec![1], 1));

    let s = SkeletalComplex::skeleton(5, 2, &caps).unwrap();
    let h = homology(&s.chain_complex(Coefficients::Integers, true).unwrap()).unwrap();
    assert_eq!((h.nonzero_degrees(), h.rank(2)), (vec![2], 4));

    let full = SkeletalComplex::skeleton(3, 2, &caps).unwrap();
    for p in [2, 3, 5] {
        assert!(is_p_acyclic(&full.chain_complex(Coefficients::Integers, true).unwrap(), p).unwrap());
    }
}

#[test]
fn projective_plane() {
    let x = rp2();
    assert_eq!((x.faces_in_dim(0), x.faces_in_dim(1), x.faces_in_dim(2)), (6, 15, 10));
    let cc = x.chain_complex(Coefficients::Integers, true).unwrap();
    let h = homology(&cc).unwrap();
    assert_eq!(h.torsion(1), &[2]);
    assert_eq!((h.rank(1), h.rank(2)), (0, 0));
    assert_eq!(h.nonzero_degrees(), vec![1]);
    let h2 = homology(&cc.clone().with_coefficients(Coefficients::Field(2)).unwrap()).unwrap();
    assert_eq!((h2.rank(1), h2.rank(2)), (1, 1));
    assert_eq!(h2.euler_characteristic(), cc.euler_characteristic());
    assert!(is_p_acyclic(&cc, 3).unwrap());
    assert!(!is_p_acyclic(&cc, 2).unwrap());
    assert!(!is_acyclic(&cc).unwrap());
}

#[test]
fn skeleton_betti_oracle() {
    let caps = Caps::default();
    for m in 1..=8usize {
        for k in 0..m.saturating_sub(1) {
            let s = SkeletalComplex::skeleton(m, k, &caps).unwrap();
            let h = homology(&s.chain_complex(Coefficients::Integers, true).unwrap()).unwrap();
            assert_eq!(h.rank(k as i64) as u128, binomial(m as u64 - 1, k as u64 + 1), "m = {m}, k = {k}");
            assert_eq!(h.nonzero_degrees(), vec![k as i64]);
            assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
        }
    }
}

#[test]
fn triplet_text_round_trip() {
    let m = SparseMatrix::from_dense(&[vec![0, 3, 0], vec![-1, 0, 7]]);
    let text = m.to_triplet_text();
    assert!(text.starts_with("2 3 3\n"));
    assert_eq!(SparseMatrix::from_triplet_text(&text).unwrap(), m);
    assert!(SparseMatrix::from_triplet_text("2 2 1\n5 0 1\n").is_err());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..=12, c), r))
}

/// Chain complex `Z^a ← Z^b ← Z^c` with `∂₂ = 0` composed from an arbitrary
/// first map and a second map built from its kernel by construction.
fn random_complex() -> impl Strategy<Value = ChainComplex> {
    (small_matrix(), prop::collection::vec(-3i64..=3, 1..=3)).prop_map(|(a, coeffs)| {
        // degree-2 cells hit multiples of a fixed integral kernel vector, if any
        let d1 = SparseMatrix::from_dense(&a);
        let kernel = acatlab::homology::kernel_basis(&d1).unwrap();
        let cols = a[0].len();
        let d2_cols: Vec<Vec<(u32, i64)>> = match kernel.first() {
            Some(z) => coeffs.iter().map(|&c| z.iter().map(|&(i, v)| (i, v * c)).filter(|e| e.1 != 0).collect()).collect(),
            None => Vec::new(),
        };
        let c2 = d2_cols.len();
        let d2 = SparseMatrix::from_columns(cols, d2_cols);
        ChainComplex::new(Coefficients::Integers, 0, vec![a.len(), cols, c2], vec![d1, d2]).unwrap()
    })
}

proptest! {
    #[test]
    fn smith_matches_determinantal_divisors(a in small_matrix()) {
        let form = smith_normal_form(&a).unwrap();
        verify_certificate(&a, &form).unwrap();
        prop_assert_eq!(&form.invariant_factors, &factors_by_minors(&a));
        prop_assert_eq!(invariant_factors(&a).unwrap(), form.invariant_factors.clone());
        for w in form.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn rank_mod_p_matches_factors(a in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let factors = invariant_factors(&a).unwrap();
        let expected = factors.iter().filter(|f| (*f % BigInt::from(p)) != BigInt::from(0)).count();
        prop_assert_eq!(rank_mod_p(&SparseMatrix::from_dense(&a), p), expected);
    }

    #[test]
    fn universal_coefficients(cc in random_complex(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let hz = homology(&cc).unwrap();
        let hp = homology(&cc.clone().with_coefficients(Coefficients::Field(p)).unwrap()).unwrap();
        for d in 0..=2i64 {
            let torsion_here = hz.torsion(d).iter().filter(|&&t| t % p == 0).count();
            let torsion_below = hz.torsion(d - 1).iter().filter(|&&t| t % p == 0).count();
            prop_assert!(hp.rank(d) >= hz.rank(d));
            prop_assert_eq!(hp.rank(d), hz.rank(d) + torsion_here + torsion_below);
        }
        prop_assert_eq!(hz.euler_characteristic(), cc.euler_characteristic());
        prop_assert_eq!(hp.euler_characteristic(), cc.euler_characteristic());
    }
}
