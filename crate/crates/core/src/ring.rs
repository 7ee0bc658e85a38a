//! Laurent polynomials over Q, F_p, Z and Z/kZ.
//!
//! A [`LaurentPolynomial`] is a finitely supported map from exponent vectors
//! in Z^d to nonzero coefficients. The free abelian group Z^d acts on it by
//! monomial shift, which is how abelian normal subgroups of a metabelian
//! group become modules over the group ring of the abelianization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An element of Z^d, used both as a monomial exponent and as a group element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExponentVector(pub SmallVec<[i64; 4]>);

impl ExponentVector {
    pub fn zero(rank: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, rank))
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = 1;
        v
    }

    pub fn from_slice(entries: &[i64]) -> Self {
        ExponentVector(SmallVec::from_slice(entries))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|e| e.abs()).max().unwrap_or(0)
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|e| e.abs()).sum()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        ExponentVector(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        ExponentVector(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(ExponentVector::from)
    }
}

/// The coefficient ring of a polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "modulus", rename_all = "snake_case")]
pub enum Coefficients {
    Rational,
    Integer,
    PrimeField(u64),
    IntegersMod(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::argument(format!("{p} is not prime")));
        }
        Ok(Coefficients::PrimeField(p))
    }

    pub fn integers_mod(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::argument(format!("modulus {k} must be at least 2")));
        }
        Ok(Coefficients::IntegersMod(k))
    }

    /// Z/kZ, collapsing to F_k when k is prime.
    pub fn modular(k: u64) -> Result<Self> {
        if is_prime(k) {
            Ok(Coefficients::PrimeField(k))
        } else {
            Self::integers_mod(k)
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Coefficients::Rational | Coefficients::PrimeField(_))
    }

    /// 0 for Q and Z, otherwise the modulus.
    pub fn characteristic(&self) -> u64 {
        match self {
            Coefficients::Rational | Coefficients::Integer => 0,
            Coefficients::PrimeField(p) | Coefficients::IntegersMod(p) => *p,
        }
    }

    /// Brings a value into canonical form for this ring.
    ///
    /// Panics if the value does not belong to the ring (a non-integer in Z,
    /// or a denominator that is not invertible modulo the characteristic).
    pub fn reduce(&self, v: BigRational) -> BigRational {
        match self {
            Coefficients::Rational => v,
            Coefficients::Integer => {
                assert!(v.is_integer(), "non-integer coefficient {v} in Z");
                v
            }
            Coefficients::PrimeField(m) | Coefficients::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let num = v.numer().mod_floor(&m);
                let den = v.denom().mod_floor(&m);
                if den.is_one() {
                    return BigRational::from_integer(num);
                }
                let inv = mod_inverse(&den, &m)
                    .unwrap_or_else(|| panic!("denominator {den} not invertible modulo {m}"));
                BigRational::from_integer((num * inv).mod_floor(&m))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> BigRational {
        self.reduce(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.reduce(-a.clone())
    }

    /// Multiplicative inverse; `None` for zero or non-units.
    pub fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        match self {
            Coefficients::Rational => Some(a.recip()),
            Coefficients::Integer => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Coefficients::PrimeField(m) | Coefficients::IntegersMod(m) => {
                let m = BigInt::from(*m);
                mod_inverse(&a.to_integer(), &m).map(BigRational::from_integer)
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::Integer => write!(f, "Z"),
            Coefficients::PrimeField(p) => write!(f, "F_{p}"),
            Coefficients::IntegersMod(k) => write!(f, "Z/{k}Z"),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// A Laurent polynomial in `rank` variables.
///
/// Terms are kept in lexicographic order of exponents, and zero coefficients
/// are never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    terms: BTreeMap<ExponentVector, BigRational>,
    coeffs: Coefficients,
    rank: usize,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize, coeffs: Coefficients) -> Self {
        LaurentPolynomial { terms: BTreeMap::new(), coeffs, rank }
    }

    pub fn one(rank: usize, coeffs: Coefficients) -> Self {
        Self::monomial(ExponentVector::zero(rank), coeffs.from_i64(1), coeffs)
    }

    pub fn constant(rank: usize, c: i64, coeffs: Coefficients) -> Self {
        Self::monomial(ExponentVector::zero(rank), coeffs.from_i64(c), coeffs)
    }

    pub fn monomial(exp: ExponentVector, c: BigRational, coeffs: Coefficients) -> Self {
        let rank = exp.rank();
        let mut p = Self::zero(rank, coeffs);
        let c = coeffs.reduce(c);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `X_{i+1}` (zero-based index).
    pub fn var(rank: usize, i: usize, coeffs: Coefficients) -> Self {
        Self::monomial(ExponentVector::basis(rank, i), coeffs.from_i64(1), coeffs)
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(rank: usize, coeffs: Coefficients, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Self::zero(rank, coeffs);
        for (e, c) in terms {
            if e.rank() != rank {
                return Err(Error::structural(format!(
                    "exponent {e} has rank {}, expected {rank}",
                    e.rank()
                )));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: &BigRational) {
        let coeffs = self.coeffs;
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = coeffs.add(v, c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                let c = coeffs.reduce(c.clone());
                if !c.is_zero() {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Componentwise minimum of the support exponents, or `None` for zero.
    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.0.iter_mut().zip(e.0.iter()) {
                *a = (*a).min(*b);
            }
            acc
        }))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x >= 0))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::structural(format!("rank {} vs {}", self.rank, other.rank)));
        }
        if self.coeffs != other.coeffs {
            return Err(Error::structural(format!(
                "coefficients {} vs {}",
                self.coeffs, other.coeffs
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_poly())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.rank, self.coeffs);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Multiplication by the monomial X^v, i.e. the action of v in Z^d.
    pub fn try_shift(&self, v: &ExponentVector) -> Result<Self> {
        if v.rank() != self.rank {
            return Err(Error::structural(format!(
                "shift of rank {} on polynomial of rank {}",
                v.rank(),
                self.rank
            )));
        }
        Ok(self.shift(v))
    }

    pub(crate) fn shift(&self, v: &ExponentVector) -> Self {
        if v.is_zero() {
            return self.clone();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e + v, c.clone())).collect(),
            coeffs: self.coeffs,
            rank: self.rank,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.rank, self.coeffs);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    fn neg_poly(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), self.coeffs.neg(c))).collect(),
            coeffs: self.coeffs,
            rank: self.rank,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank, self.coeffs);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Same exponents, coefficients mapped into another ring.
    ///
    /// Used to reduce integer polynomials modulo p or to view them over Q.
    pub fn change_coefficients(&self, coeffs: Coefficients) -> Self {
        let mut out = Self::zero(self.rank, coeffs);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn parse(s: &str, rank: usize, coeffs: Coefficients) -> Result<Self> {
        parse_polynomial(s, rank, coeffs)
    }
}

/// Serialized as a list of `[exponent, coefficient]` pairs, coefficients as
/// strings so that rationals survive the round trip.
impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(&ExponentVector, String)> = self.terms.iter().map(|(e, c)| (e, c.to_string())).collect();
        terms.serialize(s)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.neg_poly()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(mag.to_string());
            }
            for (j, &x) in e.0.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("X{}", j + 1)),
                    _ => factors.push(format!("X{}^{}", j + 1, x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses the text format `3*X1^2*X2^-1 + 1`.
///
/// Variables are `X1..Xd`; for d ≤ 3 the aliases `X`, `Y`, `Z` are accepted.
/// Coefficients may be integers or fractions `a/b`.
pub fn parse_polynomial(s: &str, rank: usize, coeffs: Coefficients) -> Result<LaurentPolynomial> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    let mut poly = LaurentPolynomial::zero(rank, coeffs);
    let mut pos = 0;
    let mut first = true;
    while pos < src.len() {
        let mut sign = BigInt::one();
        if !first && src[pos] != '+' && src[pos] != '-' {
            return Err(Error::parse(format!("expected '+' or '-' at position {pos} in {s:?}")));
        }
        // A binary operator may be followed by one unary sign, as in "a + -2*b".
        let start = pos;
        while pos < src.len() && (src[pos] == '+' || src[pos] == '-') && pos - start < 2 {
            if src[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        if first && pos - start > 1 {
            return Err(Error::parse(format!("repeated sign in {s:?}")));
        }
        first = false;
        let (exp, c) = parse_term(&src, &mut pos, rank, s)?;
        if !c.is_integer() && coeffs.inv(&BigRational::from_integer(c.denom().clone())).is_none() {
            return Err(Error::parse(format!("coefficient {c} is not an element of {coeffs}")));
        }
        poly.add_term(exp, &(c * BigRational::from_integer(sign)));
    }
    Ok(poly)
}

fn parse_term(
    src: &[char],
    pos: &mut usize,
    rank: usize,
    orig: &str,
) -> Result<(ExponentVector, BigRational)> {
    let mut exp = ExponentVector::zero(rank);
    let mut coeff = BigRational::one();
    let mut expect_factor = true;
    while *pos < src.len() && expect_factor {
        let c = src[*pos];
        if c.is_ascii_digit() {
            let num = parse_uint(src, pos);
            let mut value = BigRational::from_integer(num);
            if *pos < src.len() && src[*pos] == '/' {
                *pos += 1;
                if *pos >= src.len() || !src[*pos].is_ascii_digit() {
                    return Err(Error::parse(format!("bad fraction in {orig:?}")));
                }
                let den = parse_uint(src, pos);
                if den.is_zero() {
                    return Err(Error::parse(format!("zero denominator in {orig:?}")));
                }
                value /= BigRational::from_integer(den);
            }
            coeff *= value;
        } else if c.is_ascii_alphabetic() {
            let var = parse_variable(src, pos, rank, orig)?;
            let mut power = 1i64;
            if *pos < src.len() && src[*pos] == '^' {
                *pos += 1;
                let neg = *pos < src.len() && src[*pos] == '-';
                if neg {
                    *pos += 1;
                }
                if *pos >= src.len() || !src[*pos].is_ascii_digit() {
                    return Err(Error::parse(format!("bad exponent in {orig:?}")));
                }
                power = parse_uint(src, pos)
                    .to_i64()
                    .ok_or_else(|| Error::parse("exponent too large"))?;
                if neg {
                    power = -power;
                }
            }
            exp.0[var] += power;
        } else {
            return Err(Error::parse(format!("unexpected {c:?} in {orig:?}")));
        }
        expect_factor = false;
        if *pos < src.len() && src[*pos] == '*' {
            *pos += 1;
            expect_factor = true;
        }
    }
    if expect_factor {
        return Err(Error::parse(format!("dangling '*' in {orig:?}")));
    }
    Ok((exp, coeff))
}

fn parse_uint(src: &[char], pos: &mut usize) -> BigInt {
    let start = *pos;
    while *pos < src.len() && src[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let digits: String = src[start..*pos].iter().collect();
    digits.parse().expect("digits")
}

fn parse_variable(src: &[char], pos: &mut usize, rank: usize, orig: &str) -> Result<usize> {
    let c = src[*pos];
    *pos += 1;
    let digits_start = *pos;
    while *pos < src.len() && src[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let index = if *pos > digits_start {
        if c != 'X' {
            return Err(Error::parse(format!("unknown variable {c} in {orig:?}")));
        }
        let n: usize = src[digits_start..*pos].iter().collect::<String>().parse().unwrap();
        if n == 0 {
            return Err(Error::parse("variables are numbered from X1"));
        }
        n - 1
    } else {
        match c {
            'X' => 0,
            'Y' => 1,
            'Z' => 2,
            _ => return Err(Error::parse(format!("unknown variable {c} in {orig:?}"))),
        }
    };
    if index >= rank {
        return Err(Error::parse(format!(
            "variable index {} exceeds rank {rank} in {orig:?}",
            index + 1
        )));
    }
    Ok(index)
}
