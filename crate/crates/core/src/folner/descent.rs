use num_bigint::BigUint;
use num_traits::Zero;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::explore::explore;
use super::{ElementSet, FolnerCouple};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};

/// A homomorphism from the couple's group onto a quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    /// Onto the abelian quotient Z^d.
    Cursor,
    Identity,
    /// Onto the trivial group.
    Trivial,
}

impl Projection {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cursor" => Ok(Projection::Cursor),
            "identity" => Ok(Projection::Identity),
            "trivial" => Ok(Projection::Trivial),
            _ => Err(Error::parse(format!("unknown projection {s:?} (cursor, identity, trivial)"))),
        }
    }

    fn target(&self, group: &GroupSpec) -> GroupSpec {
        match self {
            Projection::Cursor => GroupSpec::FreeAbelian { d: group.rank() },
            Projection::Identity => group.clone(),
            Projection::Trivial => GroupSpec::trivial(),
        }
    }

    fn apply(&self, group: &GroupSpec, g: &GroupElement) -> GroupElement {
        match self {
            Projection::Cursor => GroupElement::Abelian(group.cursor(g)),
            Projection::Identity => g.clone(),
            Projection::Trivial => GroupSpec::trivial().identity(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdCandidate {
    pub threshold: String,
    pub level_size: usize,
    pub boundary_size: usize,
    pub ratio: f64,
}

/// A couple pushed to a quotient by the threshold sweep.
#[derive(Clone, Debug)]
pub struct Descent {
    pub couple: FolnerCouple,
    pub threshold: BigUint,
    /// #∂_n{f̂ > t} / #{f̂ > t} at the chosen t.
    pub ratio: f64,
    pub candidates: Vec<ThresholdCandidate>,
}

impl Descent {
    /// #A / #(A ∪ ∂A) ≥ 1 / (1 + ratio): the c0 the ratio alone guarantees.
    pub fn implied_c0(&self) -> f64 {
        1.0 / (1.0 + self.ratio)
    }
}

/// f̂(q) = #(Ω' ∩ π^{-1}(q)), keyed by q.
fn fibre_counts(couple: &FolnerCouple, projection: Projection, budget: usize) -> Result<FxHashMap<GroupElement, BigUint>> {
    let mut f: FxHashMap<GroupElement, BigUint> = FxHashMap::default();
    match (&couple.omega_prime, projection) {
        (ElementSet::Split { translations, .. }, Projection::Cursor) => {
            // Every translation's fibre is the whole module part.
            let fibre = couple.omega_prime.size() / BigUint::from(translations.count());
            for t in translations.points() {
                f.insert(GroupElement::Abelian(t), fibre.clone());
            }
        }
        (_, Projection::Trivial) => {
            f.insert(GroupSpec::trivial().identity(), couple.omega_prime.size());
        }
        (set, _) => {
            for g in set.elements(budget)? {
                *f.entry(projection.apply(&couple.group, &g)).or_default() += 1u32;
            }
        }
    }
    Ok(f)
}

/// Pushes a couple forward along a projection.
///
/// With f̂ the fibre count of Ω', each threshold t among 0 and the values
/// of f̂ below its maximum gives A = {f̂ > t}. Its n-boundary
/// ∂_n A = A·S^n ∩ A^c·S^n is found by two breadth-first sweeps in the
/// quotient. The t with the smallest #∂_n A / #A wins, ties going to the
/// larger A, and the result is (A ∪ ∂_n A, A) with radius n.
pub fn quotient_descent(couple: &FolnerCouple, projection: Projection, n: usize, budget: usize) -> Result<Descent> {
    let target = projection.target(&couple.group);
    let f = fibre_counts(couple, projection, budget)?;
    let mut values: Vec<BigUint> = f.values().cloned().collect();
    values.sort();
    values.dedup();
    let Some(max) = values.last().cloned() else {
        return Err(Error::Degenerate("Ω' is empty".into()));
    };
    if max.is_zero() {
        return Err(Error::Degenerate("every level set is empty".into()));
    }
    let mut thresholds = vec![BigUint::zero()];
    thresholds.extend(values.into_iter().filter(|v| !v.is_zero() && *v < max));
    thresholds.dedup();

    let gens = target.generators();
    let mut best: Option<(f64, usize, BigUint, Vec<GroupElement>, Vec<GroupElement>)> = None;
    let mut candidates = Vec::new();
    for t in thresholds {
        let mut level: Vec<GroupElement> = f.iter().filter(|(_, v)| **v > t).map(|(q, _)| q.clone()).collect();
        level.sort_by_cached_key(|q| q.key());
        let (boundary, outer) = boundary(&target, &gens, &level, n, budget)?;
        let ratio = boundary as f64 / level.len() as f64;
        candidates.push(ThresholdCandidate {
            threshold: t.to_string(),
            level_size: level.len(),
            boundary_size: boundary,
            ratio,
        });
        let better = match &best {
            None => true,
            Some((r, size, ..)) => ratio < *r || (ratio == *r && level.len() > *size),
        };
        if better {
            best = Some((ratio, level.len(), t, level, outer));
        }
    }
    let (ratio, _, threshold, level, outer) = best.expect("at least one threshold");
    let mut omega = level.clone();
    omega.extend(outer);
    let couple = FolnerCouple {
        group: target,
        omega: ElementSet::explicit(omega),
        omega_prime: ElementSet::explicit(level),
        m: n,
    };
    Ok(Descent { couple, threshold, ratio, candidates })
}

/// Returns #∂_n A and the elements of A·S^n outside A.
fn boundary(
    group: &GroupSpec,
    gens: &[GroupElement],
    a: &[GroupElement],
    n: usize,
    budget: usize,
) -> Result<(usize, Vec<GroupElement>)> {
    let ball = explore(group, gens, a.to_vec(), n, &|_| true, budget, 1)?;
    // Sources come first, so the rest of the ball is A·S^n \ A.
    let outer: Vec<GroupElement> = (a.len()..ball.len()).map(|i| ball.element(i).clone()).collect();
    // A ∩ A^c·S^n = A ∩ (A·S^n \ A)·S^n, as S^n is symmetric.
    let members: FxHashSet<&GroupElement> = a.iter().collect();
    let back = explore(group, gens, outer.clone(), n, &|_| true, budget, 1)?;
    let inner = (0..back.len()).filter(|&i| members.contains(back.element(i))).count();
    Ok((outer.len() + inner, outer))
}

impl std::fmt::Display for Projection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Projection::Cursor => "cursor",
            Projection::Identity => "identity",
            Projection::Trivial => "trivial",
        };
        f.write_str(s)
    }
}
