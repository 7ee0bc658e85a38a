//! Gröbner bases over Q and F_p.
//!
//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy. Polynomials are [`LaurentPolynomial`]s whose
//! support is nonnegative; the ideal carries its monomial order.
//!
//! On top of the engine sit the operations the Krull dimension code needs:
//! contraction of Laurent ideals, saturation, elimination and the
//! combinatorial dimension of the quotient ring.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

/// A total order on monomials compatible with multiplication.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Two-block order: grevlex on the eliminated variables, then grevlex on
    /// the rest. Any monomial involving an eliminated variable is larger than
    /// every monomial free of them.
    Elimination { eliminated: Vec<usize> },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b, |_| true),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination { eliminated } => {
                let in_block = |i: usize| eliminated.contains(&i);
                grevlex(a, b, in_block).then_with(|| grevlex(a, b, |i| !in_block(i)))
            }
        }
    }
}

fn grevlex(a: &[i64], b: &[i64], keep: impl Fn(usize) -> bool) -> Ordering {
    let deg = |v: &[i64]| v.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, e)| e).sum::<i64>();
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if !keep(i) {
            continue;
        }
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination { eliminated } => write!(f, "elimination{eliminated:?}"),
        }
    }
}

/// Krull dimension of a quotient ring; `Empty` stands for −∞ (the zero ring).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Dimension {
    Empty,
    Finite(usize),
}

impl Dimension {
    pub fn value(&self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Finite(k) => Some(*k),
        }
    }

    pub fn plus(&self, k: usize) -> Dimension {
        match self {
            Dimension::Empty => Dimension::Empty,
            Dimension::Finite(v) => Dimension::Finite(v + k),
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, Dimension::Finite(k) if *k > 0)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Finite(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Empty => s.serialize_str("empty"),
            Dimension::Finite(k) => s.serialize_u64(*k as u64),
        }
    }
}

/// An ideal of K[x_1..x_n] given by generators.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    generators: Vec<LaurentPolynomial>,
    nvars: usize,
    order: MonomialOrder,
    coeffs: Coefficients,
}

impl PolyIdeal {
    pub fn new(
        nvars: usize,
        coeffs: Coefficients,
        order: MonomialOrder,
        generators: Vec<LaurentPolynomial>,
    ) -> Result<Self> {
        if !coeffs.is_field() {
            return Err(Error::UnsupportedCoefficients(coeffs.to_string()));
        }
        for g in &generators {
            if g.rank() != nvars || g.coeffs() != coeffs {
                return Err(Error::structural(format!("generator {g} does not live in the ambient ring")));
            }
            if !g.is_nonnegative() {
                return Err(Error::argument(format!("generator {g} has negative exponents")));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(PolyIdeal { generators, nvars, order, coeffs })
    }

    pub fn zero(nvars: usize, coeffs: Coefficients) -> Result<Self> {
        Self::new(nvars, coeffs, MonomialOrder::Grevlex, Vec::new())
    }

    pub fn generators(&self) -> &[LaurentPolynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyIdeal { order, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted by leading term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    basis: Vec<LaurentPolynomial>,
    order: MonomialOrder,
    source: PolyIdeal,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[LaurentPolynomial] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn source(&self) -> &PolyIdeal {
        &self.source
    }

    pub fn nvars(&self) -> usize {
        self.source.nvars
    }

    pub fn coeffs(&self) -> Coefficients {
        self.source.coeffs
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].terms().all(|(e, _)| e.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.basis
            .iter()
            .map(|g| Sorted::from_poly(g, &self.order).leading().0.clone())
            .collect()
    }

    /// The basis as a fresh ideal (same order).
    pub fn to_ideal(&self) -> PolyIdeal {
        PolyIdeal { generators: self.basis.clone(), ..self.source.clone() }
            .with_order(self.order.clone())
    }

    pub fn contains(&self, p: &LaurentPolynomial) -> bool {
        normal_form(p, self).is_zero()
    }
}

/// Terms sorted ascending by the monomial order; the leading term is last.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(ExponentVector, BigRational)>,
}

impl Sorted {
    fn from_poly(p: &LaurentPolynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(a.0.entries(), b.0.entries()));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize, coeffs: Coefficients) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(nvars, coeffs, self.terms.iter().cloned())
            .expect("rank checked by construction")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(ExponentVector, BigRational) {
        self.terms.last().expect("leading term of zero polynomial")
    }

    fn make_monic(&mut self, coeffs: &Coefficients) {
        if let Some((_, lc)) = self.terms.last() {
            let inv = coeffs.inv(lc).expect("nonzero in a field");
            for (_, c) in self.terms.iter_mut() {
                *c = coeffs.mul(c, &inv);
            }
        }
    }

    /// self − c·x^m·other, merged in order.
    fn sub_scaled(
        &self,
        c: &BigRational,
        m: &ExponentVector,
        other: &Sorted,
        order: &MonomialOrder,
        coeffs: &Coefficients,
    ) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(ExponentVector, BigRational)> =
            other.terms.iter().map(|(e, v)| (e + m, coeffs.mul(v, c))).collect();
        while i < self.terms.len() || j < shifted.len() {
            let ord = if i == self.terms.len() {
                Ordering::Greater
            } else if j == shifted.len() {
                Ordering::Less
            } else {
                order.cmp(self.terms[i].0.entries(), shifted[j].0.entries())
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, v) = &shifted[j];
                    out.push((e.clone(), coeffs.neg(v)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = coeffs.sub(&self.terms[i].1, &shifted[j].1);
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Sorted { terms: out }
    }
}

fn divides(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.0.iter().zip(b.0.iter()).all(|(x, y)| x <= y)
}

fn lcm(a: &ExponentVector, b: &ExponentVector) -> ExponentVector {
    ExponentVector(a.0.iter().zip(b.0.iter()).map(|(x, y)| *x.max(y)).collect())
}

fn coprime(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.0.iter().zip(b.0.iter()).all(|(x, y)| *x == 0 || *y == 0)
}

fn degree(a: &ExponentVector) -> i64 {
    a.0.iter().sum()
}

/// Full reduction of `p` by `basis` (leading and tail terms).
fn reduce_full(
    p: &Sorted,
    basis: &[&Sorted],
    order: &MonomialOrder,
    coeffs: &Coefficients,
) -> Sorted {
    let mut work = p.clone();
    let mut remainder: Vec<(ExponentVector, BigRational)> = Vec::new();
    while let Some((lt, lc)) = work.terms.last().cloned() {
        let divisor = basis.iter().find(|g| divides(&g.leading().0, &lt));
        match divisor {
            Some(g) => {
                let (glt, glc) = g.leading();
                let c = coeffs.mul(&lc, &coeffs.inv(glc).expect("field"));
                let m = &lt - glt;
                work = work.sub_scaled(&c, &m, g, order, coeffs);
            }
            None => {
                remainder.push((lt, lc));
                work.terms.pop();
            }
        }
    }
    remainder.reverse();
    Sorted { terms: remainder }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    coeffs: Coefficients,
    polys: Vec<Sorted>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn lt(&self, i: usize) -> &ExponentVector {
        &self.polys[i].leading().0
    }

    /// Gebauer–Möller update with the new polynomial `h`.
    fn update(&mut self, h: Sorted) {
        let hi = self.polys.len();
        self.polys.push(h);
        let lth = self.lt(hi).clone();

        let candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair { i: g, j: hi, lcm: lcm(self.lt(g), &lth) })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            if coprime(self.lt(p.i), &lth) {
                kept.push(p.clone());
                continue;
            }
            let dominated = candidates[k + 1..].iter().any(|q| divides(&q.lcm, &p.lcm))
                || kept.iter().any(|q| divides(&q.lcm, &p.lcm));
            if !dominated {
                kept.push(p.clone());
            }
        }
        // Product criterion.
        kept.retain(|p| !coprime(self.lt(p.i), &lth));

        // Drop old pairs made redundant by h.
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let lcm_ih = lcm(self.lt(p.i), &lth);
            let lcm_jh = lcm(self.lt(p.j), &lth);
            let redundant = divides(&lth, &p.lcm) && lcm_ih != p.lcm && lcm_jh != p.lcm;
            if !redundant {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(kept);

        let active: Vec<usize> =
            self.active.iter().copied().filter(|&g| !divides(&lth, self.lt(g))).collect();
        self.active = active;
        self.active.push(hi);
    }

    /// Normal strategy: smallest lcm degree, then smallest lcm in lex order.
    fn select(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                degree(&a.lcm)
                    .cmp(&degree(&b.lcm))
                    .then_with(|| a.lcm.cmp(&b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> Sorted {
        let f = &self.polys[pair.i];
        let g = &self.polys[pair.j];
        let mf = &pair.lcm - &f.leading().0;
        let mg = &pair.lcm - &g.leading().0;
        let zero = Sorted { terms: Vec::new() };
        // Both are monic, so S = x^mf f − x^mg g.
        let a = zero.sub_scaled(&self.coeffs.neg(&BigRational::one()), &mf, f, self.order, &self.coeffs);
        a.sub_scaled(&BigRational::one(), &mg, g, self.order, &self.coeffs)
    }

    fn run(&mut self) {
        while let Some(pair) = self.select() {
            let s = self.spoly(&pair);
            let basis: Vec<&Sorted> = self.active.iter().map(|&k| &self.polys[k]).collect();
            let mut h = reduce_full(&s, &basis, self.order, &self.coeffs);
            if !h.is_zero() {
                h.make_monic(&self.coeffs);
                self.update(h);
            }
        }
    }

    fn reduced_basis(&self) -> Vec<Sorted> {
        let mut gens: Vec<Sorted> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
        gens.sort_by(|a, b| self.order.cmp(a.leading().0.entries(), b.leading().0.entries()));
        // Minimal basis: no leading monomial divides another.
        let mut minimal: Vec<Sorted> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            let lt = &g.leading().0;
            let redundant = gens
                .iter()
                .enumerate()
                .any(|(l, h)| l != k && divides(&h.leading().0, lt) && (&h.leading().0 != lt || l < k));
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<&Sorted> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g).collect();
            let mut r = reduce_full(&minimal[k], &others, self.order, &self.coeffs);
            r.make_monic(&self.coeffs);
            out.push(r);
        }
        out.sort_by(|a, b| self.order.cmp(b.leading().0.entries(), a.leading().0.entries()));
        out
    }
}

/// Reduced Gröbner basis of `ideal` under its own monomial order.
pub fn buchberger(ideal: &PolyIdeal) -> Result<GroebnerBasis> {
    if !ideal.coeffs.is_field() {
        return Err(Error::UnsupportedCoefficients(ideal.coeffs.to_string()));
    }
    let mut engine = Engine {
        order: &ideal.order,
        coeffs: ideal.coeffs,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in &ideal.generators {
        let mut s = Sorted::from_poly(g, &ideal.order);
        if s.is_zero() {
            continue;
        }
        s.make_monic(&ideal.coeffs);
        engine.update(s);
    }
    engine.run();
    let basis = engine
        .reduced_basis()
        .iter()
        .map(|s| s.to_poly(ideal.nvars, ideal.coeffs))
        .collect();
    Ok(GroebnerBasis { basis, order: ideal.order.clone(), source: ideal.clone() })
}

/// The unique remainder of `p` modulo the basis.
pub fn normal_form(p: &LaurentPolynomial, gb: &GroebnerBasis) -> LaurentPolynomial {
    let order = &gb.order;
    let sorted: Vec<Sorted> = gb.basis.iter().map(|g| Sorted::from_poly(g, order)).collect();
    let refs: Vec<&Sorted> = sorted.iter().collect();
    let coeffs = gb.coeffs();
    let p = p.change_coefficients(coeffs);
    reduce_full(&Sorted::from_poly(&p, order), &refs, order, &coeffs).to_poly(gb.nvars(), coeffs)
}

/// Passes from Laurent generators to the ideal of K[x] they contract to.
///
/// Each generator is multiplied by the smallest monomial clearing negative
/// exponents; the result is saturated by x_1···x_d.
pub fn laurent_contract(
    gens: &[LaurentPolynomial],
    rank: usize,
    coeffs: Coefficients,
) -> Result<PolyIdeal> {
    let mut shifted = Vec::with_capacity(gens.len());
    for g in gens {
        if g.rank() != rank {
            return Err(Error::structural(format!("generator {g} has rank {}, expected {rank}", g.rank())));
        }
        let g = g.change_coefficients(coeffs);
        if let Some(min) = g.min_exponents() {
            let clear = ExponentVector(min.0.iter().map(|&e| -e.min(0)).collect());
            shifted.push(g.shift(&clear));
        }
    }
    let ideal = PolyIdeal::new(rank, coeffs, MonomialOrder::Grevlex, shifted)?;
    if ideal.is_zero() || rank == 0 {
        return Ok(ideal);
    }
    let product = LaurentPolynomial::monomial(
        ExponentVector(smallvec::SmallVec::from_elem(1, rank)),
        coeffs.from_i64(1),
        coeffs,
    );
    saturate(&ideal, &product)
}

/// (I : f^∞), via an auxiliary variable t with t·f − 1 and elimination of t.
pub fn saturate(ideal: &PolyIdeal, f: &LaurentPolynomial) -> Result<PolyIdeal> {
    if f.is_zero() {
        return Err(Error::argument("cannot saturate by the zero polynomial"));
    }
    if f.rank() != ideal.nvars || !f.is_nonnegative() {
        return Err(Error::structural(format!("saturating polynomial {f} is not in the ambient ring")));
    }
    let n = ideal.nvars;
    let coeffs = ideal.coeffs;
    let lift = |p: &LaurentPolynomial| -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            n + 1,
            coeffs,
            p.terms().map(|(e, c)| {
                let mut v = e.clone();
                v.0.push(0);
                (v, c.clone())
            }),
        )
        .expect("rank")
    };
    let mut gens: Vec<LaurentPolynomial> = ideal.generators.iter().map(lift).collect();
    let t = LaurentPolynomial::var(n + 1, n, coeffs);
    gens.push(&(&t * &lift(&f.change_coefficients(coeffs))) - &LaurentPolynomial::one(n + 1, coeffs));
    let ext = PolyIdeal::new(n + 1, coeffs, MonomialOrder::Grevlex, gens)?;
    let contracted = eliminate(&ext, &[n])?;
    let drop = |p: &LaurentPolynomial| -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            n,
            coeffs,
            p.terms().map(|(e, c)| (ExponentVector::from_slice(&e.entries()[..n]), c.clone())),
        )
        .expect("rank")
    };
    let generators = contracted.generators.iter().map(drop).collect();
    let out = PolyIdeal::new(n, coeffs, MonomialOrder::Grevlex, generators)?;
    // Present the result by its reduced grevlex basis.
    let gb = buchberger(&out)?;
    PolyIdeal::new(n, coeffs, MonomialOrder::Grevlex, gb.basis)
}

/// Contraction of the ideal to the subring on the variables not in `vars`.
///
/// The returned ideal lives in the same ambient ring; its generators simply
/// avoid the eliminated variables.
pub fn eliminate(ideal: &PolyIdeal, vars: &[usize]) -> Result<PolyIdeal> {
    if let Some(&v) = vars.iter().find(|&&v| v >= ideal.nvars) {
        return Err(Error::argument(format!("variable index {v} out of range")));
    }
    let order = MonomialOrder::Elimination { eliminated: vars.to_vec() };
    let gb = buchberger(&ideal.with_order(order))?;
    let generators = gb
        .basis
        .into_iter()
        .filter(|g| g.terms().all(|(e, _)| vars.iter().all(|&v| e.entries()[v] == 0)))
        .collect();
    PolyIdeal::new(ideal.nvars, ideal.coeffs, MonomialOrder::Grevlex, generators)
}

/// Dimension of K[x]/I read off the leading monomials of a Gröbner basis.
///
/// It is the largest size of a variable set U such that no leading monomial
/// is supported inside U.
pub fn ideal_dimension(gb: &GroebnerBasis) -> Dimension {
    let n = gb.nvars();
    if gb.is_unit() {
        return Dimension::Empty;
    }
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            m.entries()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    assert!(n < 63, "too many variables for subset enumeration");
    let mut best = 0;
    for subset in 0u64..(1 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = size;
        }
    }
    Dimension::Finite(best)
}
