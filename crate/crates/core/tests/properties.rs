use std::collections::HashSet;

use kmss::gcm::{self, validate_gcm, GeneralizedCartanMatrix};
use kmss::geometry::{causal_flat_order, tits_cone_membership, CausalRelation, ConeVerdict, TitsConeQuery};
use kmss::liegroup::{star, theta, twist, LaurentPoly, Mat2, MAT2_TOL};
use kmss::linalg::{q, Rational};
use kmss::weylrep::{
    center_basis, dual_word_to_matrix, enumerate_real_roots, is_real_root, pairing_int, reflect_root,
    simple_reflection_matrix, simple_root_values, word_to_matrix, WeylMatrix, WeylWord,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random GCM of size 2..=4: each pair is either unlinked or gets entries
/// `-a`, `-b` with `1 <= a, b <= 3`.
fn arb_gcm() -> impl Strategy<Value = GeneralizedCartanMatrix> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), prop::collection::vec((any::<bool>(), 1i64..=3, 1i64..=3), pairs))
        })
        .prop_map(|(n, links)| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                rows[i][i] = 2;
                for j in i + 1..n {
                    let (on, a, b) = links[k];
                    k += 1;
                    if on {
                        rows[i][j] = -a;
                        rows[j][i] = -b;
                    }
                }
            }
            validate_gcm(&rows).expect("generated matrix is a GCM")
        })
}

fn arb_gcm_and_word(max_len: usize) -> impl Strategy<Value = (GeneralizedCartanMatrix, WeylWord)> {
    arb_gcm().prop_flat_map(move |a| {
        let n = a.n();
        (Just(a), prop::collection::vec(0..n, 0..=max_len).prop_map(WeylWord))
    })
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 0..5).prop_map(|terms| {
        terms.iter().fold(LaurentPoly::zero(), |acc, &(e, c)| &acc + &LaurentPoly::monomial(q(c), e))
    })
}

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| q(c)).collect()
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert_eq!(&a + &(-&a), LaurentPoly::zero());
    }

    #[test]
    fn sigma_is_an_involutive_ring_map(a in arb_laurent(), b in arb_laurent()) {
        prop_assert_eq!(a.sigma().sigma(), a.clone());
        prop_assert_eq!((&a * &b).sigma(), &a.sigma() * &b.sigma());
        prop_assert_eq!((&a + &b).sigma(), &a.sigma() + &b.sigma());
    }

    #[test]
    fn simple_reflections_are_involutions(a in arb_gcm()) {
        for i in 0..a.n() {
            let r = simple_reflection_matrix(&a, i).unwrap();
            prop_assert!(r.mul(&r).unwrap().is_identity());
            prop_assert_eq!(r.determinant(), q(-1));
        }
    }

    #[test]
    fn inverse_word_inverts((a, w) in arb_gcm_and_word(8)) {
        let m = word_to_matrix(&a, &w).unwrap();
        let inv = word_to_matrix(&a, &w.inverse()).unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
        let sign = if w.len() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(m.determinant(), q(sign));
    }

    #[test]
    fn center_is_fixed((a, w) in arb_gcm_and_word(8)) {
        let m = word_to_matrix(&a, &w).unwrap();
        for c in center_basis(&a) {
            prop_assert!(simple_root_values(&a, &c).iter().all(Zero::is_zero));
            prop_assert_eq!(m.apply(&c), c);
        }
    }

    #[test]
    fn dual_action_preserves_pairing(
        (a, w) in arb_gcm_and_word(6),
        root in prop::collection::vec(-3i64..=3, 4),
        x in prop::collection::vec(-5i64..=5, 4),
    ) {
        let n = a.n();
        let (root, x) = (&root[..n], qs(&x[..n]));
        let m = word_to_matrix(&a, &w).unwrap();
        let d = dual_word_to_matrix(&a, &w).unwrap();
        let moved_root = d.apply_int(root).unwrap();
        prop_assert_eq!(pairing_int(&a, &moved_root, &m.apply(&x)), pairing_int(&a, root, &x));
    }

    #[test]
    fn roots_are_closed_under_reflections(a in arb_gcm()) {
        let bound = 6;
        let roots = enumerate_real_roots(&a, bound);
        let set: HashSet<Vec<i64>> = roots.iter().map(|r| r.coords.clone()).collect();
        for r in &roots {
            let e: Vec<i64> = (0..a.n()).map(|k| i64::from(k == r.base)).collect();
            prop_assert_eq!(dual_word_to_matrix(&a, &r.witness).unwrap().apply_int(&e).unwrap(), r.coords.clone());
            for i in 0..a.n() {
                let img = reflect_root(&a, i, &r.coords);
                prop_assert!(is_real_root(&a, &img));
                let h: i64 = img.iter().sum();
                if img.iter().all(|&c| c >= 0) && h <= bound {
                    prop_assert!(set.contains(&img));
                }
            }
        }
    }

    #[test]
    fn descent_witness_reaches_the_chamber(a in arb_gcm(), x in prop::collection::vec(-6i64..=6, 4)) {
        let x = qs(&x[..a.n()]);
        let v = tits_cone_membership(&a, &TitsConeQuery { point: x.clone(), max_steps: 2_000 }).unwrap();
        let check = |witness: &WeylWord, interior: bool, p: &[Rational]| {
            let img = word_to_matrix(&a, witness).unwrap().apply(p);
            let vals = simple_root_values(&a, &img);
            vals.iter().all(|v| *v >= Rational::zero()) && interior == vals.iter().all(|v| *v > Rational::zero())
        };
        match v {
            ConeVerdict::InCone { witness, interior, .. } => prop_assert!(check(&witness, interior, &x)),
            ConeVerdict::InNegativeCone { witness, interior, .. } => {
                let neg: Vec<Rational> = x.iter().map(|c| -c).collect();
                prop_assert!(check(&witness, interior, &neg));
            }
            ConeVerdict::Undetermined { .. } => {}
        }
    }

    #[test]
    fn causal_order_is_transitive(
        x in prop::collection::vec(-5i64..=5, 2),
        c1 in (1i64..=4, 1i64..=4, prop::collection::vec(0usize..2, 0..4)),
        c2 in (1i64..=4, 1i64..=4, prop::collection::vec(0usize..2, 0..4)),
    ) {
        let a = validate_gcm(&[vec![2, -3], vec![-3, 2]]).unwrap();
        // alpha(c) = (5p, 5r) > 0 for c = -(2p + 3r, 3p + 2r), so c lies in
        // the open chamber; then moved by a Weyl element.
        let cone_point = |(p, r, w): &(i64, i64, Vec<usize>)| {
            let base = qs(&[-(2 * p + 3 * r), -(3 * p + 2 * r)]);
            word_to_matrix(&a, &WeylWord(w.clone())).unwrap().apply(&base)
        };
        let (d1, d2) = (cone_point(&c1), cone_point(&c2));
        let x = qs(&x);
        let y: Vec<Rational> = x.iter().zip(&d1).map(|(a, b)| a + b).collect();
        let z: Vec<Rational> = y.iter().zip(&d2).map(|(a, b)| a + b).collect();
        let rel = |p: &[Rational], r: &[Rational]| causal_flat_order(&a, p, r, 10_000).unwrap();
        prop_assert_eq!(rel(&x, &y), CausalRelation::Precedes);
        prop_assert_eq!(rel(&y, &z), CausalRelation::Precedes);
        prop_assert_eq!(rel(&x, &z), CausalRelation::Precedes);
        prop_assert_eq!(rel(&z, &x), CausalRelation::Succeeds);
        prop_assert_eq!(rel(&x, &x), CausalRelation::Equal);
    }

    #[test]
    fn twist_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Mat2::random_sl2(&mut rng);
        let h = Mat2::random_sl2(&mut rng);
        let tg = twist(&g).unwrap();
        prop_assert!(twist(&g.mul(&h)).unwrap().approx_eq(&star(&g, &twist(&h).unwrap()).unwrap(), MAT2_TOL));
        prop_assert!(theta(&tg).unwrap().approx_eq(&tg.inverse().unwrap(), MAT2_TOL));
        prop_assert!(tg.is_symmetric_positive_definite(MAT2_TOL));
        let d = Mat2::diag(g.0[0][0].abs() + 0.5, 1.0 / (g.0[0][0].abs() + 0.5));
        prop_assert!(twist(&d).unwrap().approx_eq(&d.mul(&d), MAT2_TOL));
    }
}

/// Faithfulness in rank 2: the number of distinct matrices of words of
/// length at most `k` equals the size of the ball of radius `k` in the
/// dihedral group of order `2m` (or the infinite one).
#[test]
fn rank_two_ball_sizes_match_dihedral_groups() {
    let k = 8;
    for (a, m) in [(1, Some(3)), (2, Some(4)), (3, Some(6)), (4, None), (9, None)] {
        let g = validate_gcm(&[vec![2, -1], vec![-a, 2]]).unwrap();
        let gens = [simple_reflection_matrix(&g, 0).unwrap(), simple_reflection_matrix(&g, 1).unwrap()];
        let mut seen: HashSet<WeylMatrix> = HashSet::from([WeylMatrix::identity(2)]);
        let mut frontier = vec![WeylMatrix::identity(2)];
        for _ in 0..k {
            frontier = frontier
                .iter()
                .flat_map(|x| gens.iter().map(move |r| x.mul(r).unwrap()))
                .filter(|y| seen.insert(y.clone()))
                .collect();
        }
        let expected = match m {
            Some(m) => (2 * m).min(2 * k + 1),
            None => 2 * k + 1,
        };
        assert_eq!(seen.len(), expected, "ab = {a}");
    }
}

#[test]
fn faithful_on_affine_a2_short_words() {
    // Apart from r_i^2 the shortest relators have length 6, so no word of
    // length 1..5 without immediate repeats is trivial.
    let a = gcm::type_affine_a(2);
    for len in 1..6 {
        for w in WeylWord::all_reduced_looking(3, len) {
            assert!(!word_to_matrix(&a, &w).unwrap().is_identity(), "{w:?}");
        }
    }
}
