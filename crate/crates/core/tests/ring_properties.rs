use num_bigint::BigInt;
use proptest::prelude::*;
use wakimoto::ring::{BiPoly, Exp};

fn poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((-20i64..=20, prop::array::uniform4(0u32..=2)), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, e): (i64, Exp)| BiPoly::term(BigInt::from(c), e))
            .sum()
    })
}

fn point() -> impl Strategy<Value = [BigInt; 4]> {
    prop::array::uniform4(-6i64..=6).prop_map(|p| p.map(BigInt::from))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn canonical_text_round_trips(a in poly()) {
        let back: BiPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), pts in prop::collection::vec(point(), 5)) {
        for p in &pts {
            prop_assert_eq!((&a + &b).eval_int(p), a.eval_int(p) + b.eval_int(p));
            prop_assert_eq!((&a * &b).eval_int(p), a.eval_int(p) * b.eval_int(p));
        }
    }
}
