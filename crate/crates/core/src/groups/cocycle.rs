//! Extensions 1 → M → G → Z^d → 1 given by a 2-cocycle, and the
//! Kaloujinine–Krasner embedding into the unrestricted wreath product.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::magnus::{self, MagnusElement};
use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

/// A normalized 2-cocycle σ: Z^d × Z^d → M, with M free of rank r over the
/// group ring. Normalized means σ(0, q) = σ(q, 0) = 0.
pub trait Cocycle: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn sigma(&self, q: &ExponentVector, r: &ExponentVector) -> Vec<LaurentPolynomial>;
}

/// σ = 0: the split extension M ⋊ Z^d.
#[derive(Debug)]
pub struct TrivialCocycle {
    pub d: usize,
    pub r: usize,
    pub coeffs: Coefficients,
}

impl Cocycle for TrivialCocycle {
    fn name(&self) -> String {
        format!("trivial(d={},r={},{})", self.d, self.r, self.coeffs)
    }

    fn sigma(&self, _: &ExponentVector, _: &ExponentVector) -> Vec<LaurentPolynomial> {
        vec![LaurentPolynomial::zero(self.d, self.coeffs); self.r]
    }
}

/// The Magnus group seen as an extension of Z^d by the module part, with
/// section s(q) = s_1^{q_1} ··· s_d^{q_d}. The cocycle is
/// σ(q, q') = s(q) s(q') s(q + q')^{-1}.
#[derive(Debug)]
pub struct MagnusSectionCocycle {
    pub d: usize,
    pub coeffs: Coefficients,
}

impl MagnusSectionCocycle {
    pub fn section(&self, q: &ExponentVector) -> MagnusElement {
        let mut out = MagnusElement::identity(self.d, self.coeffs);
        for i in 0..self.d {
            let g = MagnusElement::generator(self.d, i, self.coeffs);
            let g = if q.entries()[i] < 0 { magnus::inverse(&g) } else { g };
            for _ in 0..q.entries()[i].unsigned_abs() {
                out = magnus::multiply(&out, &g);
            }
        }
        out
    }

    /// (0, m)·s(q) ↦ (m, q).
    pub fn from_magnus(&self, g: &MagnusElement) -> CocycleExtElement {
        let s = self.section(&g.abelian);
        let m = g.module.iter().zip(s.module.iter()).map(|(a, b)| a - b).collect();
        CocycleExtElement { m, q: g.abelian.clone() }
    }

    pub fn to_magnus(&self, g: &CocycleExtElement) -> MagnusElement {
        let mut module = g.m.clone();
        module.resize(self.d, LaurentPolynomial::zero(self.d, self.coeffs));
        let n = MagnusElement { abelian: ExponentVector::zero(self.d), module };
        magnus::multiply(&n, &self.section(&g.q))
    }
}

impl Cocycle for MagnusSectionCocycle {
    fn name(&self) -> String {
        format!("magnus-section(d={},{})", self.d, self.coeffs)
    }

    fn sigma(&self, q: &ExponentVector, r: &ExponentVector) -> Vec<LaurentPolynomial> {
        let lhs = magnus::multiply(&self.section(q), &self.section(r));
        let prod = magnus::multiply(&lhs, &magnus::inverse(&self.section(&(q + r))));
        debug_assert!(prod.abelian.is_zero());
        prod.module
    }
}

/// The extension data: quotient rank d, module rank r, and the cocycle.
#[derive(Clone, Debug)]
pub struct CocycleExtension {
    pub d: usize,
    pub r: usize,
    pub coeffs: Coefficients,
    pub cocycle: Arc<dyn Cocycle>,
}

impl CocycleExtension {
    pub fn split(d: usize, r: usize, coeffs: Coefficients) -> Self {
        CocycleExtension { d, r, coeffs, cocycle: Arc::new(TrivialCocycle { d, r, coeffs }) }
    }

    pub fn magnus(d: usize, coeffs: Coefficients) -> Self {
        CocycleExtension { d, r: d, coeffs, cocycle: Arc::new(MagnusSectionCocycle { d, coeffs }) }
    }

    pub fn zero_module(&self) -> Vec<LaurentPolynomial> {
        vec![LaurentPolynomial::zero(self.d, self.coeffs); self.r]
    }

    pub fn identity(&self) -> CocycleExtElement {
        CocycleExtElement { m: self.zero_module(), q: ExponentVector::zero(self.d) }
    }

    /// (m, q)(m', q') = (m + X^q m' + σ(q, q'), q + q').
    pub fn multiply(&self, a: &CocycleExtElement, b: &CocycleExtElement) -> CocycleExtElement {
        let s = self.cocycle.sigma(&a.q, &b.q);
        let m = (0..self.r).map(|j| &(&a.m[j] + &b.m[j].shift(&a.q)) + &s[j]).collect();
        CocycleExtElement { m, q: &a.q + &b.q }
    }

    /// (m, q)^{-1} = (−X^{−q}(m + σ(q, −q)), −q).
    pub fn inverse(&self, a: &CocycleExtElement) -> CocycleExtElement {
        let back = -&a.q;
        let s = self.cocycle.sigma(&a.q, &back);
        let m = (0..self.r).map(|j| -&(&a.m[j] + &s[j]).shift(&back)).collect();
        CocycleExtElement { m, q: back }
    }

    /// The canonical section s(q) = (0, q).
    pub fn section(&self, q: &ExponentVector) -> CocycleExtElement {
        CocycleExtElement { m: self.zero_module(), q: q.clone() }
    }

    /// σ(a,b) + σ(a+b,c) = X^a σ(b,c) + σ(a,b+c).
    pub fn cocycle_identity_holds(&self, a: &ExponentVector, b: &ExponentVector, c: &ExponentVector) -> bool {
        let s = &self.cocycle;
        let (ab, bc, abc_l, abc_r) = (s.sigma(a, b), s.sigma(b, c), s.sigma(&(a + b), c), s.sigma(a, &(b + c)));
        (0..self.r).all(|j| &ab[j] + &abc_l[j] == &bc[j].shift(a) + &abc_r[j])
    }
}

/// (m, q) with m ∈ M and q ∈ Z^d.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CocycleExtElement {
    pub m: Vec<LaurentPolynomial>,
    pub q: ExponentVector,
}

/// The function f_g restricted to a finite window, with the cursor ḡ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KkTable {
    pub cursor: ExponentVector,
    pub values: Vec<(ExponentVector, Vec<LaurentPolynomial>)>,
}

impl KkTable {
    pub fn value(&self, q: &ExponentVector) -> Option<&Vec<LaurentPolynomial>> {
        self.values.iter().find(|(p, _)| p == q).map(|(_, v)| v)
    }
}

/// f_g(q) = s(ḡ + q)^{-1} g s(q) for q in `support`.
///
/// With this convention the images multiply as
/// f_{gh}(q) = f_g(q + h̄) + f_h(q).
pub fn kk_embed(ext: &CocycleExtension, g: &CocycleExtElement, support: &[ExponentVector]) -> KkTable {
    let values = support
        .iter()
        .map(|q| {
            let v = ext.multiply(&ext.inverse(&ext.section(&(&g.q + q))), &ext.multiply(g, &ext.section(q)));
            debug_assert!(v.q.is_zero());
            (q.clone(), v.m)
        })
        .collect();
    KkTable { cursor: g.q.clone(), values }
}

/// Checks that the embedding is multiplicative on `support`.
pub fn kk_homomorphism_holds(
    ext: &CocycleExtension,
    g: &CocycleExtElement,
    h: &CocycleExtElement,
    support: &[ExponentVector],
) -> bool {
    let gh = kk_embed(ext, &ext.multiply(g, h), support);
    let h_table = kk_embed(ext, h, support);
    let shifted: Vec<ExponentVector> = support.iter().map(|q| q + &h.q).collect();
    let g_table = kk_embed(ext, g, &shifted);
    gh.cursor == &g.q + &h.q
        && support.iter().enumerate().all(|(k, q)| {
            let lhs = gh.value(q).expect("in support");
            let a = &g_table.values[k].1;
            let b = h_table.value(q).expect("in support");
            (0..ext.r).all(|j| lhs[j] == &a[j] + &b[j])
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from_slice(v)
    }

    #[test]
    fn kk_trivial_cocycle() {
        let z = Coefficients::Integer;
        let ext = CocycleExtension::split(1, 1, z);
        let m = LaurentPolynomial::parse("X + 2", 1, z).unwrap();
        let g = CocycleExtElement { m: vec![m.clone()], q: ev(&[0]) };
        let support: Vec<_> = (-2..=2).map(|i| ev(&[i])).collect();
        let t = kk_embed(&ext, &g, &support);
        assert_eq!(t.cursor, ev(&[0]));
        for (q, v) in &t.values {
            assert_eq!(v[0], m.shift(&-q));
        }
        let id = kk_embed(&ext, &ext.identity(), &support);
        assert!(id.values.iter().all(|(_, v)| v[0].is_zero()));
    }

    #[test]
    fn magnus_cocycle_round_trip() {
        let c = MagnusSectionCocycle { d: 2, coeffs: Coefficients::Integer };
        let ext = CocycleExtension::magnus(2, Coefficients::Integer);
        let s1 = MagnusElement::generator(2, 0, Coefficients::Integer);
        let s2 = MagnusElement::generator(2, 1, Coefficients::Integer);
        let g = magnus::multiply(&magnus::multiply(&s2, &s1), &magnus::inverse(&s2));
        let h = magnus::multiply(&s1, &s1);
        let eg = c.from_magnus(&g);
        let eh = c.from_magnus(&h);
        assert_eq!(c.to_magnus(&eg), g);
        assert_eq!(c.to_magnus(&ext.multiply(&eg, &eh)), magnus::multiply(&g, &h));
        assert_eq!(c.to_magnus(&ext.inverse(&eg)), magnus::inverse(&g));
        assert!(ext.cocycle_identity_holds(&ev(&[1, -1]), &ev(&[2, 0]), &ev(&[-1, 3])));
        let support: Vec<_> = (-1..=1).flat_map(|a| (-1..=1).map(move |b| ev(&[a, b]))).collect();
        assert!(kk_homomorphism_holds(&ext, &eg, &eh, &support));
    }
}
