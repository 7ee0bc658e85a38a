//! Følner couple invariants on random quotient rings.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use metabelian::folner::{build_ring_couple, noether_size_count, quotient_descent, verify_couple, Projection, VerifyOptions};
use metabelian::groups::QuotientRing;
use metabelian::ring::{Coefficients, LaurentPolynomial};

fn ring(p: u64, d: usize, rels: &[String]) -> QuotientRing {
    let c = Coefficients::PrimeField(p);
    QuotientRing::new(c, d, rels.iter().map(|s| LaurentPolynomial::parse(s, d, c).unwrap()).collect()).unwrap()
}

fn relation(d: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((1i64..3, prop::collection::vec(-1i64..=1, d)), 1..4).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, e)| format!("{c}*{}", e.iter().enumerate().map(|(i, x)| format!("X{}^{x}", i + 1)).collect::<Vec<_>>().join("*")))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn case() -> impl Strategy<Value = (u64, usize, Vec<String>)> {
    (prop::sample::select(vec![2u64, 3]), 1usize..=2)
        .prop_flat_map(|(p, d)| (Just(p), Just(d), prop::collection::vec(relation(d), 0..=1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn noether_counts_grow_and_stay_below_the_box((p, d, rels) in case()) {
        let r = ring(p, d, &rels);
        let mut last = BigUint::from(0u32);
        for m in 0..=3usize {
            let n = noether_size_count(&r, m, 100_000).unwrap();
            prop_assert!(n >= last);
            prop_assert!(n <= BigUint::from(p).pow(((2 * m + 1) as u32).pow(d as u32)));
            last = n;
        }
    }

    #[test]
    fn split_couples_have_the_box_ratio((p, d, rels) in case(), m in 0usize..=1) {
        let r = ring(p, d, &rels);
        let couple = build_ring_couple(&r, m, 100_000).unwrap();
        let c0 = BigRational::new(
            BigInt::from(2 * m + 1).pow(d as u32),
            BigInt::from(4 * m + 1).pow(d as u32),
        );
        let ratio = BigRational::new(couple.omega_prime.size().into(), couple.omega.size().into());
        prop_assert_eq!(&ratio, &c0);
        let opts = VerifyOptions { budget: 2_000_000, ..VerifyOptions::default() };
        let report = verify_couple(&couple, &c0, None, &opts).unwrap();
        prop_assert!(report.passed(), "{:?}", report.witnesses);
    }

    #[test]
    fn descents_pass_with_their_implied_ratio((p, d, rels) in case(), m in 1usize..=2) {
        let r = ring(p, d, &rels);
        let couple = build_ring_couple(&r, m, 100_000).unwrap();
        let descent = quotient_descent(&couple, Projection::Cursor, m, 1_000_000).unwrap();
        let chosen = descent.candidates.iter().find(|c| c.threshold == descent.threshold.to_string()).unwrap();
        let c0 = BigRational::new(chosen.level_size.into(), (chosen.level_size + chosen.boundary_size).into());
        let report = verify_couple(&descent.couple, &c0, None, &VerifyOptions::default()).unwrap();
        prop_assert!(report.passed());
        prop_assert!((descent.implied_c0() - 1.0 / (1.0 + descent.ratio)).abs() < 1e-12);
    }
}
