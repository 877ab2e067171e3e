mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thomsq::{
    adem_normalize, apply_steenrod, gsz_candidates, serre_generators, RingContext, SqWord,
    SteenrodElement,
};

fn word() -> impl Strategy<Value = SqWord> {
    prop::collection::vec(1u32..9, 0..5).prop_map(|v| SqWord::new(v).unwrap())
}

proptest! {
    #[test]
    fn normal_form_is_admissible_and_idempotent(w in word()) {
        let e = SteenrodElement::from(w.clone());
        let n = adem_normalize(&e).unwrap();
        prop_assert!(n.is_admissible());
        prop_assert_eq!(adem_normalize(&n).unwrap(), n.clone());
        if !n.is_zero() {
            prop_assert_eq!(n.degree().unwrap(), Some(w.degree()));
        }
    }

    #[test]
    fn normalize_is_additive(
        (a, b) in prop::collection::vec(1u32..9, 0..5).prop_flat_map(|v| {
            (Just(SqWord::new(v.clone()).unwrap()), Just(v).prop_shuffle().prop_map(|w| SqWord::new(w).unwrap()))
        })
    ) {
        let sum = SteenrodElement::from(a.clone()).add(&SteenrodElement::from(b.clone()));
        let lhs = adem_normalize(&sum).unwrap();
        let rhs = adem_normalize(&SteenrodElement::from(a)).unwrap()
            .add(&adem_normalize(&SteenrodElement::from(b)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn admissible_words_are_fixed(w in word()) {
        prop_assume!(w.is_admissible());
        let e = SteenrodElement::from(w);
        prop_assert_eq!(adem_normalize(&e).unwrap(), e);
    }
}

/// Composite and normalized operations agree on random classes of `BO_8`.
#[test]
fn normalization_preserves_the_action() {
    let ctx = RingContext::with_degree_cap(8, false, 40).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let w = SqWord::new(
            (0..rand::Rng::gen_range(&mut rng, 2..4))
                .map(|_| rand::Rng::gen_range(&mut rng, 1..6))
                .collect(),
        )
        .unwrap();
        let d = rand::Rng::gen_range(&mut rng, 1..10);
        let p = common::random_poly(&mut rng, ctx, d, 3);
        let e = SteenrodElement::from(w.clone());
        let direct = apply_steenrod(&e, &p).unwrap();
        let normal = apply_steenrod(&adem_normalize(&e).unwrap(), &p).unwrap();
        assert_eq!(direct, normal, "{w} on {p}");
    }
}

#[test]
fn serre_matches_brute_force() {
    for k in 1..=4 {
        for d in 0..=20 {
            let fast: Vec<Vec<u32>> = serre_generators(k, d)
                .iter()
                .map(|w| w.indices().to_vec())
                .collect();
            let mut slow = common::brute_serre(k, d);
            let mut sorted = fast.clone();
            sorted.sort();
            slow.sort();
            assert_eq!(sorted, slow, "k = {k}, d = {d}");
        }
    }
}

#[test]
fn no_candidates_for_k2() {
    for d in 0..=20 {
        assert!(gsz_candidates(2, d).is_empty(), "d = {d}");
    }
}

#[test]
fn candidates_satisfy_their_filter() {
    for k in 2..=6 {
        for w in gsz_candidates(k, 24) {
            let s = w.indices();
            assert!(common::admissible(s) && common::excess(s) < k as i64);
            assert!(!s.is_empty() && s[0] != 1);
            assert_eq!((w.degree() + k) % 2, 0);
        }
    }
    let three: Vec<String> = gsz_candidates(3, 12).iter().map(|w| w.to_string()).collect();
    assert!(three.contains(&"Sq2.Sq1".to_string()));
}
