//! Ring laws for Laurent polynomials, checked against evaluation at units.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use metabelian::ring::{Coefficients, ExponentVector, LaurentPolynomial};

const RANK: usize = 2;

fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((-9i64..=9, -3i64..=3, -3i64..=3), 0..6).prop_map(|terms| {
        if terms.is_empty() {
            return "0".to_string();
        }
        terms.iter().map(|(c, a, b)| format!("{c}*X1^{a}*X2^{b}")).collect::<Vec<_>>().join(" + ")
    })
}

fn parse(s: &str, c: Coefficients) -> LaurentPolynomial {
    LaurentPolynomial::parse(s, RANK, c).unwrap()
}

/// Evaluates at X = (x1, x2) in Q, or modulo the characteristic.
fn eval(f: &LaurentPolynomial, point: [i64; 2], c: Coefficients) -> BigRational {
    let k = c.characteristic();
    let mut acc = BigRational::zero();
    for (e, coef) in f.terms() {
        let mut t = coef.clone();
        for (x, &power) in point.iter().zip(e.entries()) {
            let x = BigRational::from_integer(BigInt::from(*x));
            let xp = if power >= 0 { x.pow(power as i32) } else { x.recip().pow((-power) as i32) };
            t *= xp;
        }
        acc += t;
    }
    reduce(acc, k)
}

fn reduce(v: BigRational, k: u64) -> BigRational {
    if k == 0 {
        return v;
    }
    let m = BigInt::from(k);
    let den = v.denom().mod_floor(&m);
    let inv = den.modpow(&(euler_phi(k) - 1u32), &m);
    BigRational::from_integer((v.numer() * inv).mod_floor(&m))
}

fn euler_phi(k: u64) -> BigInt {
    BigInt::from((1..=k).filter(|i| i.gcd(&k) == 1).count())
}

fn rings() -> Vec<(Coefficients, [i64; 2])> {
    vec![
        (Coefficients::Integer, [2, -3]),
        (Coefficients::Rational, [3, 5]),
        (Coefficients::PrimeField(7), [3, 5]),
        (Coefficients::IntegersMod(6), [5, 1]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(a in poly_text(), b in poly_text(), c in poly_text()) {
        for (k, point) in rings() {
            let (f, g, h) = (parse(&a, k), parse(&b, k), parse(&c, k));
            let fg = f.try_mul(&g).unwrap();
            prop_assert_eq!(&fg, &g.try_mul(&f).unwrap());
            prop_assert_eq!(f.try_add(&g).unwrap().try_add(&h).unwrap(), f.try_add(&g.try_add(&h).unwrap()).unwrap());
            prop_assert_eq!(fg.try_mul(&h).unwrap(), f.try_mul(&g.try_mul(&h).unwrap()).unwrap());
            let lhs = f.try_mul(&g.try_add(&h).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &fg.try_add(&f.try_mul(&h).unwrap()).unwrap());
            prop_assert!(f.try_sub(&f).unwrap().is_zero());
            prop_assert_eq!(f.try_mul(&LaurentPolynomial::one(RANK, k)).unwrap(), f.clone());

            // Evaluation at a unit is a ring homomorphism: an independent check of the product.
            let ev = |p: &LaurentPolynomial| eval(p, point, k);
            prop_assert_eq!(ev(&fg), reduce(ev(&f) * ev(&g), k.characteristic()));
            prop_assert_eq!(ev(&f.try_add(&g).unwrap()), reduce(ev(&f) + ev(&g), k.characteristic()));
        }
    }

    #[test]
    fn printing_round_trips(a in poly_text()) {
        for (k, _) in rings() {
            let f = parse(&a, k);
            prop_assert_eq!(parse(&f.to_string(), k), f);
        }
    }

    #[test]
    fn shifts_are_invertible(a in poly_text(), s in (-4i64..=4, -4i64..=4)) {
        for (k, _) in rings() {
            let f = parse(&a, k);
            let v = ExponentVector::from_slice(&[s.0, s.1]);
            let back = f.try_shift(&v).unwrap().try_shift(&-&v).unwrap();
            prop_assert_eq!(back, f.clone());
            let mono = LaurentPolynomial::monomial(v, BigRational::one(), k);
            prop_assert_eq!(f.try_shift(&ExponentVector::from_slice(&[s.0, s.1])).unwrap(), f.try_mul(&mono).unwrap());
        }
    }
}
