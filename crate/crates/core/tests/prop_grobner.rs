//! Gröbner bases against a plain textbook Buchberger over F_p.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;

use metabelian::grobner::{buchberger, ideal_dimension, normal_form, MonomialOrder, PolyIdeal};
use metabelian::ring::{Coefficients, LaurentPolynomial};

const P: u64 = 7;
const NVARS: usize = 3;

type Mono = Vec<i64>;
/// Sorted descending in grevlex.
type Poly = Vec<(Mono, u64)>;

fn grevlex(a: &Mono, b: &Mono) -> Ordering {
    let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn inv(a: u64) -> u64 {
    (1..P).find(|x| x * a % P == 1).unwrap()
}

fn norm(map: BTreeMap<Mono, u64>) -> Poly {
    let mut v: Poly = map.into_iter().filter(|(_, c)| c % P != 0).collect();
    v.sort_by(|x, y| grevlex(&y.0, &x.0));
    v
}

fn monic(f: Poly) -> Poly {
    match f.first() {
        None => f,
        Some(&(_, c)) => {
            let i = inv(c);
            f.into_iter().map(|(m, x)| (m, x * i % P)).collect()
        }
    }
}

/// f - c·x^shift·g
fn sub_scaled(f: &Poly, c: u64, shift: &Mono, g: &Poly) -> Poly {
    let mut map: BTreeMap<Mono, u64> = f.iter().cloned().collect();
    for (m, x) in g {
        let mono: Mono = m.iter().zip(shift).map(|(a, b)| a + b).collect();
        let e = map.entry(mono).or_insert(0);
        *e = (*e + P * P - c * x % P) % P;
    }
    norm(map)
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn reduce(f: &Poly, basis: &[Poly]) -> Poly {
    let mut f = f.clone();
    let mut rem: BTreeMap<Mono, u64> = BTreeMap::new();
    while let Some((m, c)) = f.first().cloned() {
        match basis.iter().find(|g| divides(&g[0].0, &m)) {
            Some(g) => {
                let shift: Mono = m.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                f = sub_scaled(&f, c * inv(g[0].1) % P, &shift, g);
            }
            None => {
                rem.insert(m, c);
                f.remove(0);
            }
        }
    }
    norm(rem)
}

/// Buchberger without any pair criteria, then full interreduction.
fn naive_reduced_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens.iter().filter(|f| !f.is_empty()).cloned().map(monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|i| (0..i).map(move |j| (j, i))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (a, b) = (&g[i], &g[j]);
        let lcm: Mono = a[0].0.iter().zip(&b[0].0).map(|(x, y)| *x.max(y)).collect();
        let sa: Mono = lcm.iter().zip(&a[0].0).map(|(x, y)| x - y).collect();
        let sb: Mono = lcm.iter().zip(&b[0].0).map(|(x, y)| x - y).collect();
        let shifted_a = sub_scaled(&Vec::new(), P - 1, &sa, a);
        let s = sub_scaled(&shifted_a, 1, &sb, b);
        let r = reduce(&s, &g);
        if !r.is_empty() {
            let n = g.len();
            pairs.extend((0..n).map(|k| (k, n)));
            g.push(monic(r));
        }
    }
    // Minimalize, then reduce each element by the others.
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, f) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, h)| {
            j != i && divides(&h[0].0, &f[0].0) && (h[0].0 != f[0].0 || j < i)
        });
        if !redundant {
            minimal.push(f.clone());
        }
    }
    let mut out: Vec<Poly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
            let head = vec![minimal[i][0].clone()];
            let tail: Poly = minimal[i][1..].to_vec();
            let mut r = head;
            r.extend(reduce(&tail, &others));
            monic(r)
        })
        .collect();
    out.sort();
    out
}

fn from_library(f: &LaurentPolynomial) -> Poly {
    let map: BTreeMap<Mono, u64> = f
        .terms()
        .map(|(e, c)| (e.entries().to_vec(), (c.numer().to_i64().unwrap().rem_euclid(P as i64)) as u64))
        .collect();
    monic(norm(map))
}

fn to_library(f: &Poly) -> LaurentPolynomial {
    let text: Vec<String> = f
        .iter()
        .map(|(m, c)| format!("{c}*{}", m.iter().enumerate().map(|(i, e)| format!("X{}^{e}", i + 1)).collect::<Vec<_>>().join("*")))
        .collect();
    let s = if text.is_empty() { "0".to_string() } else { text.join(" + ") };
    LaurentPolynomial::parse(&s, NVARS, Coefficients::PrimeField(P)).unwrap()
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((1u64..P, prop::collection::vec(0i64..=2, NVARS).prop_filter("total degree at most 3", |m| m.iter().sum::<i64>() <= 3)), 1..4).prop_map(|terms| {
        let mut map = BTreeMap::new();
        for (c, m) in terms {
            *map.entry(m).or_insert(0) += c;
        }
        norm(map.into_iter().map(|(m, c)| (m, c % P)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_the_textbook_algorithm(gens in prop::collection::vec(poly(), 1..4)) {
        let lib_gens: Vec<LaurentPolynomial> = gens.iter().map(to_library).collect();
        let f7 = Coefficients::PrimeField(P);
        let gb = buchberger(&PolyIdeal::new(NVARS, f7, MonomialOrder::Grevlex, lib_gens.clone()).unwrap()).unwrap();
        let mut ours: Vec<Poly> = gb.basis().iter().map(from_library).filter(|f| !f.is_empty()).collect();
        ours.sort();
        prop_assert_eq!(ours, naive_reduced_basis(&gens));

        for g in &lib_gens {
            prop_assert!(normal_form(g, &gb).is_zero());
        }
        let lex = buchberger(&PolyIdeal::new(NVARS, f7, MonomialOrder::Lex, lib_gens).unwrap()).unwrap();
        prop_assert_eq!(ideal_dimension(&gb), ideal_dimension(&lex));
    }

    #[test]
    fn ideal_combinations_reduce_to_zero(gens in prop::collection::vec(poly(), 1..3), mult in prop::collection::vec(poly(), 2)) {
        let f7 = Coefficients::PrimeField(P);
        let lib: Vec<LaurentPolynomial> = gens.iter().map(to_library).collect();
        let gb = buchberger(&PolyIdeal::new(NVARS, f7, MonomialOrder::Grevlex, lib.clone()).unwrap()).unwrap();
        let mut comb = LaurentPolynomial::zero(NVARS, f7);
        for (g, m) in lib.iter().zip(&mult) {
            comb = comb.try_add(&g.try_mul(&to_library(m)).unwrap()).unwrap();
        }
        prop_assert!(normal_form(&comb, &gb).is_zero());
    }
}
