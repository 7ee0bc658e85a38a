//! Exact arithmetic in metabelian groups.
//!
//! Every family shares one contract: a [`GroupSpec`] supplies the identity,
//! multiplication, inversion and a canonical symmetric generating set for
//! values of [`GroupElement`]. Elements are kept in canonical form, so
//! structural equality is group equality and elements can key hash maps.

mod cocycle;
mod magnus;
mod relations;
mod semidirect;
mod wreath;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

pub use cocycle::{
    kk_embed, kk_homomorphism_holds, Cocycle, CocycleExtElement, CocycleExtension, KkTable, MagnusSectionCocycle,
    TrivialCocycle,
};
pub use magnus::MagnusElement;
pub use relations::{verify_relations, Relation, RelationFailure, RelationReport, Word};
pub use semidirect::{QuotientRing, SemidirectElement};
pub use wreath::{LampGroup, LampValue, WreathElement};

use crate::error::{Error, Result};
use crate::krull::ModulePresentation;
use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

/// A group together with its canonical generating set.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    FreeAbelian { d: usize },
    /// lamp ≀ Z^d.
    Wreath { lamp: LampGroup, d: usize },
    /// B_d (integer coefficients) or B_d^(k) (coefficients Z/k) via Magnus.
    Magnus { d: usize, coeffs: Coefficients },
    /// (A_1 × ... × A_r) ⋊ Z^d with each A_j = F_p[Z^d]/I_j.
    RingSemidirect { rings: Vec<Arc<QuotientRing>>, d: usize },
    CocycleExtension(Arc<CocycleExtension>),
}

/// An element of one of the supported families.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "family", content = "value", rename_all = "snake_case")]
pub enum GroupElement {
    Abelian(ExponentVector),
    Wreath(WreathElement),
    Magnus(MagnusElement),
    Semidirect(SemidirectElement),
    Cocycle(CocycleExtElement),
}

impl GroupElement {
    pub fn as_wreath(&self) -> Option<&WreathElement> {
        match self {
            GroupElement::Wreath(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_magnus(&self) -> Option<&MagnusElement> {
        match self {
            GroupElement::Magnus(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_semidirect(&self) -> Option<&SemidirectElement> {
        match self {
            GroupElement::Semidirect(s) => Some(s),
            _ => None,
        }
    }

    /// Canonical serialization, usable as a distribution key.
    pub fn key(&self) -> String {
        serde_json::to_string(self).expect("elements serialize")
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        use GroupSpec::*;
        match (self, other) {
            (FreeAbelian { d: a }, FreeAbelian { d: b }) => a == b,
            (Wreath { lamp: l1, d: a }, Wreath { lamp: l2, d: b }) => l1 == l2 && a == b,
            (Magnus { d: a, coeffs: c1 }, Magnus { d: b, coeffs: c2 }) => a == b && c1 == c2,
            (RingSemidirect { rings: r1, d: a }, RingSemidirect { rings: r2, d: b }) => {
                a == b && r1.len() == r2.len() && r1.iter().zip(r2).all(|(x, y)| x.same_ring(y))
            }
            (CocycleExtension(x), CocycleExtension(y)) => {
                Arc::ptr_eq(x, y) || (x.d == y.d && x.r == y.r && x.cocycle.name() == y.cocycle.name())
            }
            _ => false,
        }
    }
}

impl GroupSpec {
    pub fn free_abelian(d: usize) -> Result<Self> {
        check_rank(d)?;
        Ok(GroupSpec::FreeAbelian { d })
    }

    /// The trivial group, as Z^0. It has no generators.
    pub fn trivial() -> Self {
        GroupSpec::FreeAbelian { d: 0 }
    }

    /// (Z/p) ≀ Z^d.
    pub fn lamplighter(p: u64, d: usize) -> Result<Self> {
        check_rank(d)?;
        if p < 2 {
            return Err(Error::argument(format!("lamp order {p} must be at least 2")));
        }
        Ok(GroupSpec::Wreath { lamp: LampGroup::cyclic(p), d })
    }

    /// Z ≀ Z^d.
    pub fn wreath_z(d: usize) -> Result<Self> {
        check_rank(d)?;
        Ok(GroupSpec::Wreath { lamp: LampGroup::integers(), d })
    }

    /// The free metabelian group B_d.
    pub fn free_metabelian(d: usize) -> Result<Self> {
        check_rank(d)?;
        Ok(GroupSpec::Magnus { d, coeffs: Coefficients::Integer })
    }

    /// The free k-metabelian group B_d^(k).
    pub fn p_metabelian(d: usize, k: u64) -> Result<Self> {
        check_rank(d)?;
        Ok(GroupSpec::Magnus { d, coeffs: Coefficients::modular(k)? })
    }

    pub fn ring_semidirect(rings: Vec<QuotientRing>, d: usize) -> Result<Self> {
        check_rank(d)?;
        if rings.is_empty() {
            return Err(Error::argument("a ring semidirect product needs at least one ring"));
        }
        for r in &rings {
            if r.rank() != d {
                return Err(Error::structural(format!("ring of rank {} acted on by Z^{d}", r.rank())));
            }
            if !matches!(r.coeffs(), Coefficients::PrimeField(_)) {
                return Err(Error::UnsupportedCoefficients(format!("{} (expected F_p)", r.coeffs())));
            }
        }
        Ok(GroupSpec::RingSemidirect { rings: rings.into_iter().map(Arc::new).collect(), d })
    }

    pub fn cocycle_extension(ext: CocycleExtension) -> Result<Self> {
        check_rank(ext.d)?;
        Ok(GroupSpec::CocycleExtension(Arc::new(ext)))
    }

    /// Parses `zd:<d>`, `lamplighter:p=<p>,d=<d>`, `wreath-z:d=<d>`,
    /// `free-metabelian:d=<d>`, `p-metabelian:d=<d>,p=<p>` and
    /// `ring-semidirect:<presentation file>` and `trivial`.
    pub fn parse(s: &str) -> Result<Self> {
        let (family, args) = s.split_once(':').unwrap_or((s, ""));
        if s == "trivial" || s == "zd:0" {
            return Ok(Self::trivial());
        }
        if family == "ring-semidirect" {
            let text = std::fs::read_to_string(Path::new(args))?;
            let pres = ModulePresentation::parse(&text)?;
            let ring = QuotientRing::from_presentation(&pres)?;
            return Self::ring_semidirect(vec![ring], pres.rank());
        }
        let mut d = None;
        let mut p = None;
        for part in args.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = part.split_once('=').unwrap_or(("d", part));
            let v: u64 = v.trim().parse().map_err(|_| Error::parse(format!("bad number in {part:?}")))?;
            match k.trim() {
                "d" => d = Some(v as usize),
                "p" | "k" => p = Some(v),
                other => return Err(Error::parse(format!("unknown group parameter {other:?}"))),
            }
        }
        let need_d = || d.ok_or_else(|| Error::parse(format!("group {s:?} lacks d")));
        let need_p = || p.ok_or_else(|| Error::parse(format!("group {s:?} lacks p")));
        match family {
            "zd" => Self::free_abelian(need_d()?),
            "lamplighter" => Self::lamplighter(need_p()?, d.unwrap_or(1)),
            "wreath-z" => Self::wreath_z(need_d()?),
            "free-metabelian" => Self::free_metabelian(need_d()?),
            "p-metabelian" => Self::p_metabelian(need_d()?, need_p()?),
            other => Err(Error::parse(format!("unknown group family {other:?}"))),
        }
    }

    /// Rank of the free abelian quotient Z^d that every family maps onto.
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::FreeAbelian { d }
            | GroupSpec::Wreath { d, .. }
            | GroupSpec::Magnus { d, .. }
            | GroupSpec::RingSemidirect { d, .. } => *d,
            GroupSpec::CocycleExtension(e) => e.d,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::FreeAbelian { d } => GroupElement::Abelian(ExponentVector::zero(*d)),
            GroupSpec::Wreath { d, .. } => GroupElement::Wreath(WreathElement::identity(*d)),
            GroupSpec::Magnus { d, coeffs } => GroupElement::Magnus(MagnusElement::identity(*d, *coeffs)),
            GroupSpec::RingSemidirect { rings, d } => GroupElement::Semidirect(SemidirectElement {
                parts: rings.iter().map(|r| LaurentPolynomial::zero(*d, r.coeffs())).collect(),
                translation: ExponentVector::zero(*d),
            }),
            GroupSpec::CocycleExtension(e) => GroupElement::Cocycle(e.identity()),
        }
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        let d = self.rank();
        let ok = match (self, a) {
            (GroupSpec::FreeAbelian { .. }, GroupElement::Abelian(v)) => v.rank() == d,
            (GroupSpec::Wreath { lamp, .. }, GroupElement::Wreath(w)) => {
                w.cursor.rank() == d && w.lamps.first().is_none_or(|(p, v)| p.rank() == d && v.len() == lamp.components)
            }
            (GroupSpec::Magnus { coeffs, .. }, GroupElement::Magnus(m)) => {
                m.abelian.rank() == d
                    && m.module.len() == d
                    && m.module.iter().all(|p| p.rank() == d && p.coeffs() == *coeffs)
            }
            (GroupSpec::RingSemidirect { rings, .. }, GroupElement::Semidirect(s)) => {
                s.translation.rank() == d && s.parts.len() == rings.len()
            }
            (GroupSpec::CocycleExtension(e), GroupElement::Cocycle(c)) => c.q.rank() == d && c.m.len() == e.r,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("element does not belong to {self}")))
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.multiply_unchecked(a, b))
    }

    /// Multiplication without membership checks; panics on foreign elements.
    pub fn multiply_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (self, a, b) {
            (GroupSpec::FreeAbelian { .. }, E::Abelian(x), E::Abelian(y)) => E::Abelian(x + y),
            (GroupSpec::Wreath { lamp, .. }, E::Wreath(x), E::Wreath(y)) => E::Wreath(wreath::multiply(lamp, x, y)),
            (GroupSpec::Magnus { .. }, E::Magnus(x), E::Magnus(y)) => E::Magnus(magnus::multiply(x, y)),
            (GroupSpec::RingSemidirect { rings, .. }, E::Semidirect(x), E::Semidirect(y)) => {
                E::Semidirect(semidirect::multiply(rings, x, y))
            }
            (GroupSpec::CocycleExtension(e), E::Cocycle(x), E::Cocycle(y)) => E::Cocycle(e.multiply(x, y)),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.inverse_unchecked(a))
    }

    pub fn inverse_unchecked(&self, a: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (self, a) {
            (GroupSpec::FreeAbelian { .. }, E::Abelian(x)) => E::Abelian(-x),
            (GroupSpec::Wreath { lamp, .. }, E::Wreath(x)) => E::Wreath(wreath::inverse(lamp, x)),
            (GroupSpec::Magnus { .. }, E::Magnus(x)) => E::Magnus(magnus::inverse(x)),
            (GroupSpec::RingSemidirect { rings, .. }, E::Semidirect(x)) => E::Semidirect(semidirect::inverse(rings, x)),
            (GroupSpec::CocycleExtension(e), E::Cocycle(x)) => E::Cocycle(e.inverse(x)),
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Image in the free abelian quotient Z^d.
    pub fn cursor(&self, a: &GroupElement) -> ExponentVector {
        match a {
            GroupElement::Abelian(v) => v.clone(),
            GroupElement::Wreath(w) => w.cursor.clone(),
            GroupElement::Magnus(m) => m.abelian.clone(),
            GroupElement::Semidirect(s) => s.translation.clone(),
            GroupElement::Cocycle(c) => c.q.clone(),
        }
    }

    /// The unsigned generators; words index them from 1.
    ///
    /// Wreath: cursor steps e_1..e_d, then one lamp per component at the
    /// origin. Magnus: s_1..s_d. Ring semidirect: translations, then 1 in
    /// each ring. Cocycle extensions: s(e_i), then module basis vectors.
    pub fn basic_generators(&self) -> Vec<GroupElement> {
        let d = self.rank();
        let units = (0..d).map(|i| ExponentVector::basis(d, i));
        match self {
            GroupSpec::FreeAbelian { .. } => units.map(GroupElement::Abelian).collect(),
            GroupSpec::Wreath { lamp, .. } => {
                let mut out: Vec<GroupElement> = units
                    .map(|e| GroupElement::Wreath(WreathElement { lamps: Vec::new(), cursor: e }))
                    .collect();
                for j in 0..lamp.components {
                    out.push(GroupElement::Wreath(WreathElement {
                        lamps: vec![(ExponentVector::zero(d), lamp.basis(j))],
                        cursor: ExponentVector::zero(d),
                    }));
                }
                out
            }
            GroupSpec::Magnus { coeffs, .. } => {
                (0..d).map(|i| GroupElement::Magnus(MagnusElement::generator(d, i, *coeffs))).collect()
            }
            GroupSpec::RingSemidirect { rings, .. } => {
                let zero: Vec<LaurentPolynomial> =
                    rings.iter().map(|r| LaurentPolynomial::zero(d, r.coeffs())).collect();
                let mut out: Vec<GroupElement> = units
                    .map(|e| GroupElement::Semidirect(SemidirectElement { parts: zero.clone(), translation: e }))
                    .collect();
                for (j, r) in rings.iter().enumerate() {
                    let mut parts = zero.clone();
                    parts[j] = r.one();
                    out.push(GroupElement::Semidirect(SemidirectElement {
                        parts,
                        translation: ExponentVector::zero(d),
                    }));
                }
                out
            }
            GroupSpec::CocycleExtension(e) => {
                let mut out: Vec<GroupElement> = units.map(|q| GroupElement::Cocycle(e.section(&q))).collect();
                for j in 0..e.r {
                    let mut m = e.zero_module();
                    m[j] = LaurentPolynomial::one(d, e.coeffs);
                    out.push(GroupElement::Cocycle(CocycleExtElement { m, q: ExponentVector::zero(d) }));
                }
                out
            }
        }
    }

    /// The symmetric generating set: each basic generator followed by its
    /// inverse, skipping duplicates and the identity.
    pub fn generators(&self) -> Vec<GroupElement> {
        let id = self.identity();
        let mut out: Vec<GroupElement> = Vec::new();
        for g in self.basic_generators() {
            let inv = self.inverse_unchecked(&g);
            for x in [g, inv] {
                if x != id && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Evaluates a word of signed 1-based generator indices left to right.
    pub fn word_evaluate(&self, word: &[i64]) -> Result<GroupElement> {
        let gens = self.basic_generators();
        let mut out = self.identity();
        for &letter in word {
            let idx = letter.unsigned_abs() as usize;
            if letter == 0 || idx > gens.len() {
                return Err(Error::argument(format!("generator index {letter} out of range 1..={}", gens.len())));
            }
            let g = &gens[idx - 1];
            let g = if letter < 0 { self.inverse_unchecked(g) } else { g.clone() };
            out = self.multiply_unchecked(&out, &g);
        }
        Ok(out)
    }

    /// s_i for a Magnus group (1-based index).
    pub fn magnus_generator(&self, i: usize) -> Result<MagnusElement> {
        match self {
            GroupSpec::Magnus { d, coeffs } => {
                if i == 0 || i > *d {
                    return Err(Error::argument(format!("generator index {i} out of range 1..={d}")));
                }
                Ok(MagnusElement::generator(*d, i - 1, *coeffs))
            }
            _ => Err(Error::GroupMismatch(format!("{self} is not a Magnus group"))),
        }
    }
}

fn check_rank(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::argument("rank d must be at least 1"));
    }
    Ok(())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FreeAbelian { d: 0 } => write!(f, "trivial"),
            GroupSpec::FreeAbelian { d } => write!(f, "zd:{d}"),
            GroupSpec::Wreath { lamp, d } => match (lamp.modulus, lamp.components) {
                (Some(p), 1) => write!(f, "lamplighter:p={p},d={d}"),
                (None, 1) => write!(f, "wreath-z:d={d}"),
                (m, r) => write!(f, "wreath(lamp={m:?}^{r},d={d})"),
            },
            GroupSpec::Magnus { d, coeffs } => match coeffs {
                Coefficients::Integer => write!(f, "free-metabelian:d={d}"),
                c => write!(f, "p-metabelian:d={d},p={}", c.characteristic()),
            },
            GroupSpec::RingSemidirect { rings, d } => {
                let names: Vec<String> = rings
                    .iter()
                    .map(|r| {
                        let rels: Vec<String> = r.relations().iter().map(|x| x.to_string()).collect();
                        format!("{}[X^±]/({})", r.coeffs(), rels.join(", "))
                    })
                    .collect();
                write!(f, "ring-semidirect({}; d={d})", names.join(" x "))
            }
            GroupSpec::CocycleExtension(e) => write!(f, "cocycle-extension({})", e.cocycle.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from_slice(v)
    }

    fn lamp(at: i64, cursor: i64) -> GroupElement {
        GroupElement::Wreath(WreathElement {
            lamps: vec![(ev(&[at]), LampValue::from_slice(&[1]))],
            cursor: ev(&[cursor]),
        })
    }

    #[test]
    fn lamplighter_products() {
        let g = GroupSpec::lamplighter(2, 1).unwrap();
        let t = GroupElement::Wreath(WreathElement { lamps: vec![], cursor: ev(&[1]) });
        let a = lamp(0, 0);
        assert_eq!(g.multiply(&a, &t).unwrap(), lamp(0, 1));
        assert_eq!(g.multiply(&t, &a).unwrap(), lamp(1, 1));
        assert_eq!(g.inverse(&lamp(0, 1)).unwrap(), lamp(-1, -1));
        assert_eq!(g.multiply(&a, &g.identity()).unwrap(), a);
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn integer_lamp_inverse() {
        let g = GroupSpec::wreath_z(1).unwrap();
        let x = lamp(0, 1);
        let inv = g.inverse(&x).unwrap();
        assert_eq!(inv.as_wreath().unwrap().lamps, vec![(ev(&[-1]), LampValue::from_slice(&[-1]))]);
        assert_eq!(g.generators().len(), 4);
    }

    #[test]
    fn magnus_generators() {
        let g = GroupSpec::free_metabelian(2).unwrap();
        let s1 = g.magnus_generator(1).unwrap();
        assert_eq!(s1.abelian, ev(&[1, 0]));
        assert!(s1.module[0] == LaurentPolynomial::one(2, Coefficients::Integer) && s1.module[1].is_zero());
        let s2 = g.magnus_generator(2).unwrap();
        assert_eq!(s2.abelian, ev(&[0, 1]));
        assert!(g.magnus_generator(3).is_err());
        assert_eq!(g.word_evaluate(&[1, -1]).unwrap(), g.identity());
        assert_eq!(g.word_evaluate(&[]).unwrap(), g.identity());
        let inv = g.inverse(&GroupElement::Magnus(s1)).unwrap();
        let inv = inv.as_magnus().unwrap();
        assert_eq!(inv.abelian, ev(&[-1, 0]));
        assert_eq!(inv.module[0], LaurentPolynomial::parse("-X^-1", 2, Coefficients::Integer).unwrap());
    }

    #[test]
    fn magnus_commutator() {
        let z = Coefficients::Integer;
        let g = GroupSpec::free_metabelian(2).unwrap();
        let c = g.word_evaluate(&[1, 2, -1, -2]).unwrap();
        assert_ne!(c, g.identity());
        let c = c.as_magnus().unwrap();
        assert!(c.abelian.is_zero());
        // s1 s2 s1^-1 s2^-1 = (0, (1 − Y) e_1 − (1 − X) e_2)
        assert_eq!(c.module[0], LaurentPolynomial::parse("1 - Y", 2, z).unwrap());
        assert_eq!(c.module[1], LaurentPolynomial::parse("X - 1", 2, z).unwrap());
        let g3 = GroupSpec::p_metabelian(2, 3).unwrap();
        let word: Vec<i64> = [1, 2, -1, -2].repeat(3);
        assert_eq!(g3.word_evaluate(&word).unwrap(), g3.identity());
        assert!(g.word_evaluate(&[3]).is_err());
    }

    #[test]
    fn semidirect_conjugation_is_shift() {
        let f3 = Coefficients::PrimeField(3);
        let ring = QuotientRing::new(f3, 2, vec![LaurentPolynomial::parse("X*Y - 1 - X", 2, f3).unwrap()]).unwrap();
        let g = GroupSpec::ring_semidirect(vec![ring.clone()], 2).unwrap();
        let m = ring.reduce(&LaurentPolynomial::parse("X^2 + 2*Y^-1", 2, f3).unwrap());
        let t = ev(&[1, -2]);
        let elt = |parts: LaurentPolynomial, tr: ExponentVector| {
            GroupElement::Semidirect(SemidirectElement { parts: vec![parts], translation: tr })
        };
        let tt = elt(LaurentPolynomial::zero(2, f3), t.clone());
        let conj = g.multiply(&g.multiply(&tt, &elt(m.clone(), ev(&[0, 0]))).unwrap(), &g.inverse(&tt).unwrap()).unwrap();
        assert_eq!(conj, elt(ring.shift(&m, &t), ev(&[0, 0])));
    }

    #[test]
    fn mismatch_is_reported() {
        let g = GroupSpec::lamplighter(2, 1).unwrap();
        let h = GroupSpec::free_abelian(1).unwrap();
        assert!(matches!(g.multiply(&g.identity(), &h.identity()), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn spec_strings() {
        for s in ["zd:3", "lamplighter:p=2,d=1", "wreath-z:d=2", "free-metabelian:d=2", "p-metabelian:d=2,p=3"] {
            assert_eq!(GroupSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(GroupSpec::parse("lamplighter:p=1,d=1").is_err());
        assert!(GroupSpec::parse("nope:d=1").is_err());
    }
}
