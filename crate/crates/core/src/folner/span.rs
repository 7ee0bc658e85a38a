use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::QuotientRing;
use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

/// The inclusive box [lo_1, hi_1] × ... × [lo_d, hi_d] in Z^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxRange {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl BoxRange {
    /// [−r, r]^d.
    pub fn centered(d: usize, r: i64) -> Self {
        BoxRange { lo: vec![-r; d], hi: vec![r; d] }
    }

    pub fn rank(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        v.rank() == self.rank() && v.entries().iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| a <= x && x <= b)
    }

    pub fn contains_box(&self, other: &BoxRange) -> bool {
        self.rank() == other.rank() && (0..self.rank()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }

    pub fn count(&self) -> u64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| if b < a { 0 } else { (b - a + 1) as u64 }).product()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> Vec<ExponentVector> {
        let mut out = Vec::with_capacity(self.count() as usize);
        if self.count() == 0 {
            return out;
        }
        let mut cur = self.lo.clone();
        loop {
            out.push(ExponentVector::from_slice(&cur));
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = self.lo[i];
            }
        }
    }
}

type Vector = BTreeMap<ExponentVector, u64>;

/// An F_p-subspace of a quotient ring, kept in reduced echelon form.
///
/// Each basis row is monic at its pivot, the largest exponent in its support,
/// and no other row has a nonzero entry at that pivot. Distinct coefficient
/// tuples therefore give distinct elements.
#[derive(Clone, Debug)]
pub struct Span {
    p: u64,
    rank: usize,
    rows: BTreeMap<ExponentVector, Vector>,
}

fn to_vector(f: &LaurentPolynomial, p: u64) -> Vector {
    f.terms()
        .map(|(e, c)| (e.clone(), c.numer().to_u64().expect("canonical F_p coefficient") % p))
        .filter(|(_, c)| *c != 0)
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// v ← v − c·row.
fn axpy(v: &mut Vector, c: u64, row: &Vector, p: u64) {
    for (e, x) in row {
        let cur = v.get(e).copied().unwrap_or(0);
        let next = (cur + p - c * x % p) % p;
        if next == 0 {
            v.remove(e);
        } else {
            v.insert(e.clone(), next);
        }
    }
}

impl Span {
    pub fn new(p: u64, rank: usize) -> Self {
        Span { p, rank, rows: BTreeMap::new() }
    }

    /// π(B_r): the image in `ring` of polynomials supported in [−r, r]^d.
    ///
    /// Normal forms are linear, so this is the span of the normal forms of
    /// the monomials in the box. `budget` caps the number of monomials.
    pub fn of_ball(ring: &QuotientRing, r: usize, budget: usize) -> Result<Self> {
        let p = match ring.coeffs() {
            Coefficients::PrimeField(p) => p,
            other => return Err(Error::UnsupportedCoefficients(format!("{other} (expected F_p)"))),
        };
        let b = BoxRange::centered(ring.rank(), r as i64);
        let monomials = b.count();
        if monomials > budget as u64 {
            return Err(Error::Budget { budget, reached: monomials.min(usize::MAX as u64) as usize });
        }
        let mut span = Span::new(p, ring.rank());
        for e in b.points() {
            span.insert(&ring.monomial(&e));
        }
        Ok(span)
    }

    fn reduce(&self, mut v: Vector) -> Vector {
        // Pivots are maxima of their rows, so clearing from the top terminates.
        let mut out = Vector::new();
        while let Some((e, c)) = v.pop_last() {
            match self.rows.get(&e) {
                Some(row) => {
                    v.insert(e, c);
                    axpy(&mut v, c, row, self.p);
                }
                None => {
                    out.insert(e, c);
                }
            }
        }
        out
    }

    /// Adds f to the span; returns false if it was already there.
    pub fn insert(&mut self, f: &LaurentPolynomial) -> bool {
        let v = self.reduce(to_vector(f, self.p));
        let Some((pivot, &lead)) = v.last_key_value() else {
            return false;
        };
        let pivot = pivot.clone();
        let inv = inv_mod(lead, self.p);
        let row: Vector = v.into_iter().map(|(e, c)| (e, c * inv % self.p)).collect();
        for other in self.rows.values_mut() {
            if let Some(&c) = other.get(&pivot) {
                axpy(other, c, &row, self.p);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, f: &LaurentPolynomial) -> bool {
        f.rank() == self.rank && self.reduce(to_vector(f, self.p)).is_empty()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.dim() as u32)
    }

    /// Every element, in a fixed order; fails if there are more than `budget`.
    pub fn elements(&self, budget: usize) -> Result<Vec<LaurentPolynomial>> {
        let size = self.size();
        if size > BigUint::from(budget) {
            return Err(Error::Budget { budget, reached: size.to_usize().unwrap_or(usize::MAX) });
        }
        let coeffs = Coefficients::PrimeField(self.p);
        let basis: Vec<&Vector> = self.rows.values().collect();
        let n = size.to_usize().expect("within budget");
        let mut out = Vec::with_capacity(n);
        let mut digits = vec![0u64; basis.len()];
        for _ in 0..n {
            let mut acc = Vector::new();
            for (row, &c) in basis.iter().zip(&digits) {
                if c != 0 {
                    axpy(&mut acc, self.p - c, row, self.p);
                }
            }
            let terms = acc.into_iter().map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c))));
            out.push(LaurentPolynomial::from_terms(self.rank, coeffs, terms).expect("rank"));
            for d in digits.iter_mut() {
                *d += 1;
                if *d < self.p {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ring(rel: &str, d: usize) -> QuotientRing {
        let f2 = Coefficients::PrimeField(2);
        let rels = if rel.is_empty() { vec![] } else { vec![LaurentPolynomial::parse(rel, d, f2).unwrap()] };
        QuotientRing::new(f2, d, rels).unwrap()
    }

    #[test]
    fn box_points_are_lexicographic() {
        let b = BoxRange { lo: vec![-1, 0], hi: vec![0, 2] };
        let pts = b.points();
        assert_eq!(pts.len() as u64, b.count());
        assert_eq!(pts[0], ExponentVector::from_slice(&[-1, 0]));
        assert_eq!(pts[5], ExponentVector::from_slice(&[0, 2]));
        assert!(b.contains(&pts[3]) && !b.contains(&ExponentVector::from_slice(&[1, 0])));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // All 2^(#box) subsets summed and reduced, against the echelon count.
        for (rel, d, r) in [("", 1, 1), ("X - 1", 1, 2), ("X^2 + X + 1", 1, 2), ("Y - X^2", 2, 1), ("1", 1, 1)] {
            let q = ring(rel, d);
            let span = Span::of_ball(&q, r, 1000).unwrap();
            let mons: Vec<LaurentPolynomial> = BoxRange::centered(d, r as i64).points().iter().map(|e| q.monomial(e)).collect();
            let mut seen = HashSet::new();
            for mask in 0u64..(1 << mons.len()) {
                let mut acc = LaurentPolynomial::zero(d, Coefficients::PrimeField(2));
                for (i, m) in mons.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        acc = &acc + m;
                    }
                }
                assert!(span.contains(&acc));
                seen.insert(acc);
            }
            assert_eq!(BigUint::from(seen.len()), span.size(), "{rel}");
            let listed: HashSet<LaurentPolynomial> = span.elements(1 << 20).unwrap().into_iter().collect();
            assert_eq!(listed, seen);
        }
    }

    #[test]
    fn membership_and_budget() {
        let q = ring("", 1);
        let span = Span::of_ball(&q, 1, 10).unwrap();
        assert!(span.contains(&q.monomial(&ExponentVector::from_slice(&[-1]))));
        assert!(!span.contains(&q.monomial(&ExponentVector::from_slice(&[2]))));
        assert!(matches!(Span::of_ball(&q, 10, 5), Err(Error::Budget { .. })));
        assert!(matches!(span.elements(4), Err(Error::Budget { .. })));
    }
}
