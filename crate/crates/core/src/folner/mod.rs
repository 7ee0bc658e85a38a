//! Følner couples: construction and exhaustive verification.
//!
//! A couple (Ω, Ω') for radius m satisfies #Ω' ≥ c0·#Ω, Ω'·S^m ⊆ Ω and
//! #Ω ≤ V(m), where S^m is the ball of radius m for the group's symmetric
//! generating set. Couples over ring semidirect products are stored as
//! products of normal-form spaces and translation boxes; other sets are
//! explicit element lists.

mod bound;
mod descent;
mod explore;
mod file;
mod growth;
mod span;

use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashSet;
use serde::Serialize;

pub use bound::SizeBound;
pub use descent::{quotient_descent, Descent, Projection, ThresholdCandidate};
pub use file::CoupleFile;
pub use growth::{fit_growth, fit_growth_log, GrowthFit};
pub use span::{BoxRange, Span};

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec, QuotientRing, SemidirectElement};
use crate::krull::ModulePresentation;
use crate::ring::Coefficients;
use explore::explore;

/// A finite subset of a group.
#[derive(Clone, Debug)]
pub enum ElementSet {
    /// π_1(B_{r_1}) × ... × π_k(B_{r_k}) ⋊ box inside a ring semidirect product.
    Split { radii: Vec<usize>, translations: BoxRange, spans: Vec<Arc<Span>> },
    Explicit { elements: Vec<GroupElement>, index: FxHashSet<GroupElement> },
}

impl ElementSet {
    /// The split set with module parts π_j(B_{radii[j]}) over `group`.
    pub fn split(group: &GroupSpec, radii: Vec<usize>, translations: BoxRange, budget: usize) -> Result<Self> {
        let GroupSpec::RingSemidirect { rings, d } = group else {
            return Err(Error::GroupMismatch(format!("split sets live in ring semidirect products, not {group}")));
        };
        if radii.len() != rings.len() || translations.rank() != *d {
            return Err(Error::structural("split set does not match the group's rings and rank"));
        }
        let spans = rings
            .iter()
            .zip(&radii)
            .map(|(r, &rad)| Span::of_ball(r, rad, budget).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementSet::Split { radii, translations, spans })
    }

    pub fn explicit(elements: Vec<GroupElement>) -> Self {
        let mut index = FxHashSet::default();
        let elements: Vec<GroupElement> = elements.into_iter().filter(|e| index.insert(e.clone())).collect();
        ElementSet::Explicit { elements, index }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match self {
            ElementSet::Split { translations, spans, .. } => match g {
                GroupElement::Semidirect(s) => {
                    translations.contains(&s.translation)
                        && s.parts.len() == spans.len()
                        && spans.iter().zip(&s.parts).all(|(sp, x)| sp.contains(x))
                }
                _ => false,
            },
            ElementSet::Explicit { index, .. } => index.contains(g),
        }
    }

    pub fn size(&self) -> BigUint {
        match self {
            ElementSet::Split { translations, spans, .. } => {
                spans.iter().fold(BigUint::from(translations.count()), |acc, s| acc * s.size())
            }
            ElementSet::Explicit { elements, .. } => BigUint::from(elements.len()),
        }
    }

    /// All elements; fails when there are more than `budget`.
    pub fn elements(&self, budget: usize) -> Result<Vec<GroupElement>> {
        let size = self.size();
        if size > BigUint::from(budget) {
            return Err(Error::Budget { budget, reached: size.to_usize().unwrap_or(usize::MAX) });
        }
        match self {
            ElementSet::Explicit { elements, .. } => Ok(elements.clone()),
            ElementSet::Split { translations, spans, .. } => {
                let lists = spans.iter().map(|s| s.elements(budget)).collect::<Result<Vec<_>>>()?;
                let mut parts: Vec<Vec<_>> = vec![Vec::new()];
                for list in &lists {
                    parts = parts
                        .iter()
                        .flat_map(|prefix| {
                            list.iter().map(move |x| {
                                let mut v = prefix.clone();
                                v.push(x.clone());
                                v
                            })
                        })
                        .collect();
                }
                let mut out = Vec::new();
                for t in translations.points() {
                    for p in &parts {
                        out.push(GroupElement::Semidirect(SemidirectElement { parts: p.clone(), translation: t.clone() }));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, ElementSet::Split { .. })
    }
}

/// A pair Ω' ⊆ Ω of finite subsets of `group`, meant for radius `m`.
#[derive(Clone, Debug)]
pub struct FolnerCouple {
    pub group: GroupSpec,
    pub omega: ElementSet,
    pub omega_prime: ElementSet,
    pub m: usize,
}

/// Reads a cyclic ring presentation as a quotient of F_p[Z^d]; integer
/// presentations with a declared prime torsion are reduced mod p.
pub fn ring_from_presentation(pres: &ModulePresentation) -> Result<QuotientRing> {
    if pres.n_generators() != 1 {
        return Err(Error::argument("a ring needs a cyclic presentation (gens=1)"));
    }
    let coeffs = match (pres.coeffs(), pres.declared_characteristic()) {
        (Coefficients::PrimeField(p), _) => Coefficients::PrimeField(p),
        (Coefficients::Integer, Some(k)) => Coefficients::prime_field(k)
            .map_err(|_| Error::UnsupportedCoefficients(format!("Z/{k} (the torsion must be prime)")))?,
        (other, _) => return Err(Error::UnsupportedCoefficients(format!("{other} (expected F_p)"))),
    };
    let rels = pres.relations().iter().map(|row| row[0].change_coefficients(coeffs)).collect();
    QuotientRing::new(coeffs, pres.rank(), rels)
}

/// The split couple (π(B_{2m}) ⋊ [−2m, 2m]^d, π(B_{2m}) ⋊ [−m, m]^d) in A ⋊ Z^d.
///
/// `budget` caps the number of monomials reduced, (4m+1)^d.
pub fn build_ring_couple(ring: &QuotientRing, m: usize, budget: usize) -> Result<FolnerCouple> {
    let d = ring.rank();
    let group = GroupSpec::ring_semidirect(vec![ring.clone()], d)?;
    let omega = ElementSet::split(&group, vec![2 * m], BoxRange::centered(d, 2 * m as i64), budget)?;
    let omega_prime = match &omega {
        ElementSet::Split { radii, spans, .. } => ElementSet::Split {
            radii: radii.clone(),
            translations: BoxRange::centered(d, m as i64),
            spans: spans.clone(),
        },
        ElementSet::Explicit { .. } => unreachable!("split by construction"),
    };
    Ok(FolnerCouple { group, omega, omega_prime, m })
}

/// #π(B_m): the number of distinct normal forms of polynomials supported in
/// [−m, m]^d. `budget` caps the number of monomials, (2m+1)^d.
pub fn noether_size_count(ring: &QuotientRing, m: usize, budget: usize) -> Result<BigUint> {
    Ok(Span::of_ball(ring, m, budget)?.size())
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Cap on elements visited by the ball exploration and on enumerated sets.
    pub budget: usize,
    pub threads: usize,
    pub max_witnesses: usize,
    /// Also check that Ω'·S^{m+1} leaves Ω.
    pub probe_sharpness: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: 5_000_000, threads: 1, max_witnesses: 16, probe_sharpness: true }
    }
}

/// An element of Ω'·S^m outside Ω, reached as `source · word`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub source: GroupElement,
    /// Indices into the symmetric generating set.
    pub word: Vec<usize>,
    pub element: GroupElement,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ratio<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct CoupleReport {
    pub group: String,
    pub m: usize,
    #[serde(serialize_with = "decimal")]
    pub size: BigUint,
    #[serde(serialize_with = "decimal")]
    pub size_prime: BigUint,
    /// #Ω' / #Ω.
    #[serde(serialize_with = "ratio")]
    pub c0: BigRational,
    pub c0_value: f64,
    #[serde(serialize_with = "ratio")]
    pub c0_required: BigRational,
    pub c0_ok: bool,
    pub nested_ok: bool,
    pub containment_ok: bool,
    pub size_bound: Option<f64>,
    pub size_bound_ok: bool,
    /// Elements the exploration started from.
    pub sources: usize,
    /// Elements of Ω'·S^m (plus the probe layer) visited.
    pub explored: usize,
    /// How the sources were chosen when not all of Ω' is used.
    pub reduction: Option<String>,
    /// Some(true) when Ω'·S^{m+1} ⊄ Ω.
    pub sharp: Option<bool>,
    pub witnesses: Vec<Witness>,
    /// Set when the budget ran out; the containment flag is then false.
    pub indeterminate: Option<String>,
}

impl CoupleReport {
    pub fn passed(&self) -> bool {
        self.indeterminate.is_none() && self.c0_ok && self.nested_ok && self.containment_ok && self.size_bound_ok
    }
}

/// Split-set shortcut: with V' ⊆ V, (v', t)·w ∈ V ⋊ F iff (0, t)·w ∈ V ⋊ F,
/// because left multiplication by (v', 0) only adds v' to the module part.
fn coset_sources(c: &FolnerCouple) -> Option<Vec<GroupElement>> {
    let (ElementSet::Split { radii: r, .. }, ElementSet::Split { radii: rp, translations, spans }) = (&c.omega, &c.omega_prime)
    else {
        return None;
    };
    if r.len() != rp.len() || r.iter().zip(rp).any(|(a, b)| b > a) {
        return None;
    }
    let d = translations.rank();
    let zero: Vec<_> = spans
        .iter()
        .map(|s| crate::ring::LaurentPolynomial::zero(d, Coefficients::PrimeField(s.characteristic())))
        .collect();
    Some(
        translations
            .points()
            .into_iter()
            .map(|t| GroupElement::Semidirect(SemidirectElement { parts: zero.clone(), translation: t }))
            .collect(),
    )
}

fn nested(c: &FolnerCouple, budget: usize) -> Result<bool> {
    if let (ElementSet::Split { radii: r, translations: b, .. }, ElementSet::Split { radii: rp, translations: bp, .. }) =
        (&c.omega, &c.omega_prime)
    {
        // π(B_r) ⊆ π(B_R) whenever r ≤ R.
        if r.len() == rp.len() && r.iter().zip(rp).all(|(a, b)| b <= a) {
            return Ok(b.contains_box(bp));
        }
    }
    Ok(c.omega_prime.elements(budget)?.iter().all(|g| c.omega.contains(g)))
}

/// Exhaustively checks the three couple conditions.
///
/// Containment is decided by a breadth-first exploration of Ω'·S^m that stops
/// expanding at elements outside Ω; every such element within distance m is a
/// violation. For split couples the exploration starts from one element per
/// translation of Ω', which is exact by [`coset_sources`].
pub fn verify_couple(
    couple: &FolnerCouple,
    c0_required: &BigRational,
    bound: Option<&SizeBound>,
    opts: &VerifyOptions,
) -> Result<CoupleReport> {
    let size = couple.omega.size();
    let size_prime = couple.omega_prime.size();
    if size.is_zero() || size_prime.is_zero() {
        return Err(Error::Degenerate("couple sets must be nonempty".into()));
    }
    let c0 = BigRational::new(size_prime.clone().into(), size.clone().into());
    let c0_value = c0.to_f64().unwrap_or(f64::NAN);
    let (size_bound, size_bound_ok) = match bound {
        Some(b) => {
            let v = b.eval(couple.m as f64)?;
            (Some(v), bound::within(&size, v))
        }
        None => (None, true),
    };
    let mut report = CoupleReport {
        group: couple.group.to_string(),
        m: couple.m,
        c0_ok: &c0 >= c0_required,
        c0,
        c0_value,
        c0_required: c0_required.clone(),
        size,
        size_prime,
        nested_ok: false,
        containment_ok: false,
        size_bound,
        size_bound_ok,
        sources: 0,
        explored: 0,
        reduction: None,
        sharp: None,
        witnesses: Vec::new(),
        indeterminate: None,
    };
    match nested(couple, opts.budget) {
        Ok(ok) => report.nested_ok = ok,
        Err(Error::Budget { budget, reached }) => {
            report.indeterminate = Some(format!("Ω' has {reached} elements, budget {budget}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    let sources = match coset_sources(couple) {
        Some(s) if report.nested_ok => {
            report.reduction = Some("one representative (0, t) per translation t of Ω'".into());
            s
        }
        _ => match couple.omega_prime.elements(opts.budget) {
            Ok(s) => s,
            Err(Error::Budget { budget, reached }) => {
                report.indeterminate = Some(format!("Ω' has {reached} elements, budget {budget}"));
                return Ok(report);
            }
            Err(e) => return Err(e),
        },
    };
    report.sources = sources.len();
    let gens = couple.group.generators();
    let depth = couple.m + usize::from(opts.probe_sharpness);
    let inside = |g: &GroupElement| couple.omega.contains(g);
    let ball = match explore(&couple.group, &gens, sources, depth, &inside, opts.budget, opts.threads) {
        Ok(b) => b,
        Err(Error::Budget { budget, reached }) => {
            report.indeterminate = Some(format!("exploration reached {reached} elements, budget {budget}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.explored = ball.len();
    let outside: Vec<usize> = (0..ball.len()).filter(|&i| !ball.inside(i)).collect();
    let violations: Vec<usize> = outside.iter().copied().filter(|&i| ball.depth(i) <= couple.m).collect();
    report.containment_ok = violations.is_empty();
    report.witnesses = violations.iter().take(opts.max_witnesses).map(|&i| ball.witness(i)).collect();
    if opts.probe_sharpness && report.containment_ok {
        report.sharp = Some(!outside.is_empty());
    }
    Ok(report)
}

/// The componentwise product couple Δ = Ω × Λ, Δ' = Ω' × Λ' in
/// (A_1 × ... × B_1 × ...) ⋊ Z^d with Z^d acting diagonally.
///
/// Both couples must be split with the same radius and rank, share the
/// translation box of their inner sets, and the outer box of `c1` must lie
/// in that of `c2`; the product uses the boxes of `c1`.
pub fn product_couple(c1: &FolnerCouple, c2: &FolnerCouple, budget: usize) -> Result<FolnerCouple> {
    let (GroupSpec::RingSemidirect { rings: r1, d: d1 }, GroupSpec::RingSemidirect { rings: r2, d: d2 }) = (&c1.group, &c2.group)
    else {
        return Err(Error::GroupMismatch("product couples need two ring semidirect products".into()));
    };
    if d1 != d2 {
        return Err(Error::GroupMismatch(format!("acting groups Z^{d1} and Z^{d2} differ")));
    }
    if c1.m != c2.m {
        return Err(Error::GroupMismatch(format!("radii {} and {} differ", c1.m, c2.m)));
    }
    let split = |s: &ElementSet| match s {
        ElementSet::Split { radii, translations, .. } => Some((radii.clone(), translations.clone())),
        ElementSet::Explicit { .. } => None,
    };
    let (Some((o1, b1)), Some((p1, bp1)), Some((o2, b2)), Some((p2, bp2))) =
        (split(&c1.omega), split(&c1.omega_prime), split(&c2.omega), split(&c2.omega_prime))
    else {
        return Err(Error::GroupMismatch("product couples need split sets".into()));
    };
    if bp1 != bp2 {
        return Err(Error::GroupMismatch("inner translation boxes differ".into()));
    }
    if !b2.contains_box(&b1) {
        return Err(Error::GroupMismatch("outer box of the first couple is not inside that of the second".into()));
    }
    let rings: Vec<QuotientRing> = r1.iter().chain(r2.iter()).map(|r| (**r).clone()).collect();
    let group = GroupSpec::ring_semidirect(rings, *d1)?;
    let omega = ElementSet::split(&group, [o1, o2].concat(), b1, budget)?;
    let omega_prime = ElementSet::split(&group, [p1, p2].concat(), bp1, budget)?;
    Ok(FolnerCouple { group, omega, omega_prime, m: c1.m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LaurentPolynomial;
    use num_bigint::BigInt;

    fn f2_ring(rel: &str, d: usize) -> QuotientRing {
        let f2 = Coefficients::PrimeField(2);
        let rels = if rel.is_empty() { vec![] } else { vec![LaurentPolynomial::parse(rel, d, f2).unwrap()] };
        QuotientRing::new(f2, d, rels).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn lamplighter_couple_sizes() {
        let c = build_ring_couple(&f2_ring("", 1), 1, 1000).unwrap();
        assert_eq!(c.omega.size(), BigUint::from(160u32));
        assert_eq!(c.omega_prime.size(), BigUint::from(96u32));
        let r = verify_couple(&c, &q(3, 5), None, &VerifyOptions::default()).unwrap();
        assert_eq!(r.c0, q(3, 5));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn lamplighter_couples_verify_and_are_sharp() {
        let ring = f2_ring("", 1);
        for m in 0..=5usize {
            let c = build_ring_couple(&ring, m, 1000).unwrap();
            let bound = SizeBound::parse("2^(4*m+1)*(4*m+1)", &[]).unwrap();
            let r = verify_couple(&c, &q(2 * m as i64 + 1, 4 * m as i64 + 1), Some(&bound), &VerifyOptions::default()).unwrap();
            assert!(r.passed(), "m = {m}: {r:?}");
            assert_eq!(r.sharp, Some(true));
            assert_eq!(r.size, BigUint::from(2u32).pow(4 * m as u32 + 1) * (4 * m as u32 + 1));
        }
    }

    #[test]
    fn reduced_and_full_explorations_agree() {
        let ring = f2_ring("X^2 + X + 1", 1);
        for m in 1..=2 {
            let c = build_ring_couple(&ring, m, 1000).unwrap();
            let reduced = verify_couple(&c, &q(0, 1), None, &VerifyOptions::default()).unwrap();
            let flat = FolnerCouple {
                omega_prime: ElementSet::explicit(c.omega_prime.elements(100_000).unwrap()),
                ..c.clone()
            };
            let full = verify_couple(&flat, &q(0, 1), None, &VerifyOptions::default()).unwrap();
            assert!(reduced.reduction.is_some() && full.reduction.is_none());
            assert_eq!((reduced.containment_ok, reduced.sharp), (full.containment_ok, full.sharp));
            assert_eq!(full.sources as u64, c.omega_prime.size().to_u64().unwrap());
        }
    }

    #[test]
    fn corrupted_couple_fails_with_witnesses() {
        let c = build_ring_couple(&f2_ring("", 1), 2, 1000).unwrap();
        let bad = FolnerCouple { omega_prime: c.omega.clone(), ..c };
        let r = verify_couple(&bad, &q(1, 2), None, &VerifyOptions::default()).unwrap();
        assert!(!r.containment_ok && !r.passed());
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            assert!(!bad.omega.contains(&w.element));
            assert!(w.word.len() <= 2);
            let mut g = w.source.clone();
            let gens = bad.group.generators();
            for &k in &w.word {
                g = bad.group.multiply_unchecked(&g, &gens[k]);
            }
            assert_eq!(g, w.element);
        }
    }

    #[test]
    fn singleton_couple_at_radius_zero() {
        let g = GroupSpec::lamplighter(2, 1).unwrap();
        let e = ElementSet::explicit(vec![g.identity()]);
        let c = FolnerCouple { group: g, omega: e.clone(), omega_prime: e, m: 0 };
        let r = verify_couple(&c, &q(1, 1), None, &VerifyOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.sharp, Some(true));
    }

    #[test]
    fn noether_counts() {
        for m in 0..5usize {
            assert_eq!(noether_size_count(&f2_ring("", 1), m, 100).unwrap(), BigUint::from(2u32).pow(2 * m as u32 + 1));
            assert_eq!(noether_size_count(&f2_ring("1", 1), m, 100).unwrap(), BigUint::from(1u32));
            assert_eq!(noether_size_count(&f2_ring("Y - X^2", 2), m, 100).unwrap(), BigUint::from(2u32).pow(6 * m as u32 + 1));
        }
        let c = build_ring_couple(&f2_ring("X - 1", 1), 1, 100).unwrap();
        match &c.omega {
            ElementSet::Split { spans, .. } => assert_eq!(spans[0].size(), BigUint::from(2u32)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn noether_growth_tracks_dimension() {
        let ms: Vec<usize> = (1..=8).collect();
        let counts = |rel: &str| -> Vec<BigUint> { ms.iter().map(|&m| noether_size_count(&f2_ring(rel, 2), m, 10_000).unwrap()).collect() };
        let line = fit_growth(&counts("Y - X^2"), &ms).unwrap();
        assert!((line.k_hat - 1.0).abs() < 1e-6, "{line:?}");
        let plane = fit_growth(&counts(""), &ms).unwrap();
        assert!((1.7..=2.3).contains(&plane.k_hat), "{plane:?}");
    }

    #[test]
    fn products_multiply_sizes_and_verify() {
        let ring = f2_ring("", 1);
        for m in 1..=3usize {
            let c = build_ring_couple(&ring, m, 1000).unwrap();
            let p = product_couple(&c, &c, 1000).unwrap();
            let boxes = BigUint::from(4 * m as u64 + 1);
            assert_eq!(p.omega.size(), c.omega.size() * c.omega.size() / boxes);
            let r = verify_couple(&p, &q(2 * m as i64 + 1, 4 * m as i64 + 1), None, &VerifyOptions::default()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let c = build_ring_couple(&ring, 2, 1000).unwrap();
        let unit = build_ring_couple(&f2_ring("1", 1), 2, 1000).unwrap();
        let p = product_couple(&c, &unit, 1000).unwrap();
        assert_eq!((p.omega.size(), p.omega_prime.size()), (c.omega.size(), c.omega_prime.size()));
        let other_radius = build_ring_couple(&ring, 1, 1000).unwrap();
        assert!(matches!(product_couple(&c, &other_radius, 1000), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn budget_makes_reports_indeterminate() {
        let c = build_ring_couple(&f2_ring("", 1), 2, 1000).unwrap();
        let opts = VerifyOptions { budget: 3, ..Default::default() };
        let r = verify_couple(&c, &q(1, 2), None, &opts).unwrap();
        assert!(r.indeterminate.is_some() && !r.passed());
    }

    #[test]
    fn thread_count_does_not_change_reports() {
        let c = build_ring_couple(&f2_ring("", 2), 1, 1000).unwrap();
        let a = verify_couple(&c, &q(1, 3), None, &VerifyOptions { threads: 1, ..Default::default() }).unwrap();
        let b = verify_couple(&c, &q(1, 3), None, &VerifyOptions { threads: 3, ..Default::default() }).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed());
    }
}
