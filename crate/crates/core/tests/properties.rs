mod common;

use common::*;
use proptest::prelude::*;
use steenrod_chow::chow::elem_abelian_ring;
use steenrod_chow::fp::{binom_mod_p, FpMatrix};
use steenrod_chow::groups::{rep_classes, AbelianGroup, FiniteGroup};
use steenrod_chow::poly::Poly;
use steenrod_chow::powers::{adem_reduce, adem_reduce_with, OpExpr, Word};
use steenrod_chow::unstable::{brown_gitler, hom_space, FinitelyPresentedModule};

fn primes() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

fn word() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..7, 1..4)
}

fn homogeneous(nvars: usize, deg: u32) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    let mono = prop::collection::vec(0u32..=deg, nvars).prop_filter_map("degree", move |mut m| {
        let s: u32 = m.iter().sum();
        if s > deg {
            return None;
        }
        m[0] += deg - s;
        Some(m)
    });
    prop::collection::vec((mono, 1u32..5), 1..4)
}

fn poly(p: u32, nvars: usize, terms: &[(Vec<u32>, u32)]) -> Poly {
    Poly::from_terms(prime(p), nvars, terms.iter().map(|(m, c)| (*c as i64, m.clone()))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomials_match_pascal(p in primes(), n in 0u64..60, k in 0u64..60) {
        prop_assert_eq!(binom_mod_p(n, k, prime(p)), binom_oracle(n, k, p));
    }

    #[test]
    fn adem_is_idempotent_and_admissible(p in primes(), w in word()) {
        let e = OpExpr::from_word(Word::new(w), prime(p));
        let nf = adem_reduce(&e);
        prop_assert!(nf.is_admissible());
        prop_assert_eq!(adem_reduce(&nf), nf);
    }

    #[test]
    fn adem_is_confluent(p in primes(), w in word(), seed in any::<u64>()) {
        let e = OpExpr::from_word(Word::new(w), prime(p));
        let mut state = seed;
        let mut pick = |pos: &[usize]| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % pos.len()
        };
        prop_assert_eq!(adem_reduce_with(&e, &mut pick), adem_reduce(&e));
    }

    #[test]
    fn normal_form_acts_like_the_word(p in primes(), w in word(), terms in homogeneous(2, 4)) {
        let q = prime(p);
        let ring = elem_abelian_ring(2, q);
        let f = poly(p, 2, &terms);
        let word = Word::new(w);
        let nf = adem_reduce(&OpExpr::from_word(word.clone(), q));
        prop_assert_eq!(ring.apply_word(&word, &f).unwrap(), ring.apply_expr(&nf, &f).unwrap());
    }

    #[test]
    fn cartan_formula(p in primes(), a in 0u32..6, f in homogeneous(2, 2), g in homogeneous(2, 3)) {
        let q = prime(p);
        let ring = elem_abelian_ring(2, q);
        let (f, g) = (poly(p, 2, &f), poly(p, 2, &g));
        let lhs = ring.total_power_act(a, &ring.mul(&f, &g).unwrap()).unwrap();
        let mut rhs = Poly::zero(2);
        for i in 0..=a {
            let t = ring.mul(&ring.total_power_act(i, &f).unwrap(), &ring.total_power_act(a - i, &g).unwrap()).unwrap();
            rhs = rhs.add(&t, q);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_power_and_instability(p in primes(), terms in homogeneous(3, 4), extra in 1u32..4) {
        let q = prime(p);
        let ring = elem_abelian_ring(3, q);
        let f = poly(p, 3, &terms);
        prop_assume!(!f.is_zero());
        let d = ring.degree_of(&f).unwrap().unwrap() as u32;
        prop_assert_eq!(ring.total_power_act(d, &f).unwrap(), ring.pow(&f, p as u64).unwrap());
        prop_assert!(ring.total_power_act(d + extra, &f).unwrap().is_zero());
    }

    #[test]
    fn rep_classes_partition_commuting_tuples(orders in prop::collection::vec(prop_oneof![Just(2u64), Just(4)], 1..3), r in 1usize..3) {
        let g = AbelianGroup::new(prime(2), orders).unwrap().to_finite_group();
        let classes = rep_classes(r, &g, prime(2));
        // abelian: conjugation is trivial, so classes are tuples of 2-torsion
        let torsion = (0..g.order()).filter(|&x| g.pow(x, 2) == 0).count();
        prop_assert_eq!(classes.len(), torsion.pow(r as u32));
        prop_assert!(classes.iter().all(|c| c.orbit_size == 1));
    }

    #[test]
    fn centralizers_are_conjugation_equivariant(a in 0usize..24, h in 0usize..24) {
        let g = FiniteGroup::symmetric(4).unwrap();
        let conj: Vec<usize> = g.centralizer_elements(&[a]).into_iter().map(|x| g.conjugate(h, x)).collect();
        let mut conj = conj;
        conj.sort();
        prop_assert_eq!(g.centralizer_elements(&[g.conjugate(h, a)]), conj);
    }

    #[test]
    fn brown_gitler_counts_points(p in prop_oneof![Just(2u32), Just(3)], degrees in prop::collection::vec(0usize..6, 1..4), k in 0usize..6) {
        let q = prime(p);
        let mut m = FinitelyPresentedModule::zero(q);
        for &d in &degrees {
            m = m.direct_sum(&FinitelyPresentedModule::point(q, d)).unwrap();
        }
        let j = brown_gitler(k, k, q);
        let h = hom_space(&m, &j.module).unwrap().dim();
        prop_assert_eq!(h, degrees.iter().filter(|&&d| d == k).count());
    }

    #[test]
    fn rank_nullity(p in primes(), rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-3i64..4, 36)) {
        let entries: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 6..r * 6 + cols].to_vec()).collect();
        let m = FpMatrix::from_rows(prime(p), cols, &entries).unwrap();
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
    }
}
