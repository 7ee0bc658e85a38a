//! Krull dimension invariants.

use proptest::prelude::*;

use metabelian::krull::{krull_report, module_krull_dim, ModulePresentation};
use metabelian::ring::{Coefficients, LaurentPolynomial};

fn poly_text(d: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((1i64..5, prop::collection::vec(-2i64..=2, d)), 1..4).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, e)| format!("{c}*{}", e.iter().enumerate().map(|(i, x)| format!("X{}^{x}", i + 1)).collect::<Vec<_>>().join("*")))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn cyclic(c: Coefficients, d: usize, rels: &[LaurentPolynomial]) -> ModulePresentation {
    ModulePresentation::cyclic(c, d, rels.to_vec()).unwrap()
}

/// Nonzero polynomials with at least two terms are nonunits of the Laurent ring.
fn is_monomial(f: &LaurentPolynomial) -> bool {
    f.len() == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_modules_have_full_dimension(d in 1usize..=3, gens in 1usize..=3, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let m = ModulePresentation::free(Coefficients::PrimeField(p), d, gens).unwrap();
        prop_assert_eq!(module_krull_dim(&m).unwrap().value(), Some(d));
        let z = ModulePresentation::free(Coefficients::Integer, d, gens).unwrap().with_torsion_free().unwrap();
        prop_assert_eq!(krull_report(&z, &[]).unwrap().krull_group, d + 1);
    }

    #[test]
    fn hypersurfaces_drop_one_dimension(text in poly_text(2), p in prop::sample::select(vec![2u64, 3, 5])) {
        let c = Coefficients::PrimeField(p);
        let f = LaurentPolynomial::parse(&text, 2, c).unwrap();
        prop_assume!(!f.is_zero());
        let dim = module_krull_dim(&cyclic(c, 2, std::slice::from_ref(&f))).unwrap();
        if is_monomial(&f) {
            prop_assert_eq!(dim.value(), None);
        } else {
            prop_assert_eq!(dim.value(), Some(1));
        }
    }

    #[test]
    fn dimension_ignores_monomial_factors_and_variable_order(a in poly_text(2), b in poly_text(2), shift in (-3i64..=3, -3i64..=3)) {
        let c = Coefficients::PrimeField(3);
        let f = LaurentPolynomial::parse(&a, 2, c).unwrap();
        let g = LaurentPolynomial::parse(&b, 2, c).unwrap();
        let base = module_krull_dim(&cyclic(c, 2, &[f.clone(), g.clone()])).unwrap();
        let v = metabelian::ring::ExponentVector::from_slice(&[shift.0, shift.1]);
        let shifted = module_krull_dim(&cyclic(c, 2, &[f.try_shift(&v).unwrap(), g.clone()])).unwrap();
        prop_assert_eq!(base, shifted);
        let swap = |s: &str| s.replace("X1", "Y").replace("X2", "X1").replace('Y', "X2");
        let fs = LaurentPolynomial::parse(&swap(&a), 2, c).unwrap();
        let gs = LaurentPolynomial::parse(&swap(&b), 2, c).unwrap();
        prop_assert_eq!(base, module_krull_dim(&cyclic(c, 2, &[fs, gs])).unwrap());
    }

    #[test]
    fn direct_sums_take_the_maximum(a in poly_text(2), b in poly_text(2)) {
        let c = Coefficients::PrimeField(5);
        let m1 = cyclic(c, 2, &[LaurentPolynomial::parse(&a, 2, c).unwrap()]);
        let m2 = cyclic(c, 2, &[LaurentPolynomial::parse(&a, 2, c).unwrap(), LaurentPolynomial::parse(&b, 2, c).unwrap()]);
        let (d1, d2) = (module_krull_dim(&m1).unwrap(), module_krull_dim(&m2).unwrap());
        let sum = module_krull_dim(&m1.direct_sum(&m2).unwrap()).unwrap();
        prop_assert_eq!(sum.value(), d1.value().max(d2.value()));
        // A quotient never has larger dimension.
        prop_assert!(d2.value() <= d1.value());
    }
}
