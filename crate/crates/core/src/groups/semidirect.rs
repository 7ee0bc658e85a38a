use serde::Serialize;

use crate::error::{Error, Result};
use crate::grobner::{buchberger, normal_form, GroebnerBasis, MonomialOrder, PolyIdeal};
use crate::krull::ModulePresentation;
use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

/// A ring A = K[X_1^±, ..., X_d^±]/I with unique normal forms.
///
/// I is realized in K[X_1..X_d, W_1..W_d] together with X_i W_i − 1. Standard
/// monomials are never divisible by X_i W_i, so a normal form maps back to
/// a Laurent polynomial without collisions.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    coeffs: Coefficients,
    rank: usize,
    relations: Vec<LaurentPolynomial>,
    gb: GroebnerBasis,
    trivial: bool,
}

impl QuotientRing {
    pub fn new(coeffs: Coefficients, rank: usize, relations: Vec<LaurentPolynomial>) -> Result<Self> {
        if !coeffs.is_field() {
            return Err(Error::UnsupportedCoefficients(coeffs.to_string()));
        }
        let mut gens = Vec::new();
        for r in &relations {
            if r.rank() != rank || r.coeffs() != coeffs {
                return Err(Error::structural(format!("relation {r} is not in the ring")));
            }
            gens.push(embed(r, rank));
        }
        let n = 2 * rank;
        for i in 0..rank {
            let xw = &LaurentPolynomial::var(n, i, coeffs) * &LaurentPolynomial::var(n, rank + i, coeffs);
            gens.push(&xw - &LaurentPolynomial::one(n, coeffs));
        }
        let gb = buchberger(&PolyIdeal::new(n, coeffs, MonomialOrder::Grevlex, gens)?)?;
        let trivial = relations.iter().all(|r| r.is_zero());
        Ok(QuotientRing { coeffs, rank, relations, gb, trivial })
    }

    /// The ring presented by a cyclic module presentation over F_p or Q.
    pub fn from_presentation(pres: &ModulePresentation) -> Result<Self> {
        if pres.n_generators() != 1 {
            return Err(Error::argument("a ring needs a cyclic presentation (gens=1)"));
        }
        let rels = pres.relations().iter().map(|row| row[0].clone()).collect();
        Self::new(pres.coeffs(), pres.rank(), rels)
    }

    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[LaurentPolynomial] {
        &self.relations
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gb.is_unit()
    }

    /// Canonical representative of f modulo I.
    pub fn reduce(&self, f: &LaurentPolynomial) -> LaurentPolynomial {
        if self.trivial {
            return f.change_coefficients(self.coeffs);
        }
        let nf = normal_form(&embed(&f.change_coefficients(self.coeffs), self.rank), &self.gb);
        unembed(&nf, self.rank)
    }

    pub fn one(&self) -> LaurentPolynomial {
        self.reduce(&LaurentPolynomial::one(self.rank, self.coeffs))
    }

    pub fn monomial(&self, e: &ExponentVector) -> LaurentPolynomial {
        self.reduce(&LaurentPolynomial::monomial(e.clone(), self.coeffs.from_i64(1), self.coeffs))
    }

    /// X^t · m, reduced.
    pub fn shift(&self, m: &LaurentPolynomial, t: &ExponentVector) -> LaurentPolynomial {
        if self.trivial {
            return m.shift(t);
        }
        self.reduce(&m.shift(t))
    }

    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        self.coeffs == other.coeffs && self.rank == other.rank && self.gb.basis() == other.gb.basis()
    }
}

/// X^e ↦ X^{e+} W^{e−}.
fn embed(p: &LaurentPolynomial, rank: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        2 * rank,
        p.coeffs(),
        p.terms().map(|(e, c)| {
            let mut v = ExponentVector::zero(2 * rank);
            for (i, &x) in e.entries().iter().enumerate() {
                if x >= 0 {
                    v.0[i] = x;
                } else {
                    v.0[rank + i] = -x;
                }
            }
            (v, c.clone())
        }),
    )
    .expect("rank")
}

fn unembed(p: &LaurentPolynomial, rank: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        rank,
        p.coeffs(),
        p.terms().map(|(e, c)| {
            let v: Vec<i64> = (0..rank).map(|i| e.entries()[i] - e.entries()[rank + i]).collect();
            (ExponentVector::from(v), c.clone())
        }),
    )
    .expect("rank")
}

/// (m_1, ..., m_r; t) in (A_1 × ... × A_r) ⋊ Z^d, each m_j in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SemidirectElement {
    pub parts: Vec<LaurentPolynomial>,
    pub translation: ExponentVector,
}

/// (m, t)(m', t') = (m + X^t m', t + t').
pub(crate) fn multiply(rings: &[std::sync::Arc<QuotientRing>], a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
    let parts = rings
        .iter()
        .zip(a.parts.iter().zip(b.parts.iter()))
        .map(|(r, (x, y))| x + &r.shift(y, &a.translation))
        .collect();
    SemidirectElement { parts, translation: &a.translation + &b.translation }
}

/// (m, t)^{-1} = (−X^{−t} m, −t).
pub(crate) fn inverse(rings: &[std::sync::Arc<QuotientRing>], a: &SemidirectElement) -> SemidirectElement {
    let back = -&a.translation;
    let parts = rings.iter().zip(a.parts.iter()).map(|(r, x)| -&r.shift(x, &back)).collect();
    SemidirectElement { parts, translation: back }
}
