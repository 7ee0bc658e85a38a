//! Return probabilities of simple random walks.
//!
//! Three routes: exact convolution with certified truncation bounds, Monte
//! Carlo with deterministic seeding, and stretched-exponential fitting of the
//! resulting decay.

mod exact;
pub(crate) mod fit;
mod lattice;
mod montecarlo;
mod study;

use std::collections::HashMap;
use std::fmt;
use std::hash::BuildHasherDefault;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHasher;
use serde::{Serialize, Serializer};

pub use exact::{exact_return_probabilities, Arithmetic, ExactWalk, TruncationReport};
pub use fit::{fit_exponent, FitModel, FitOptions, FitResult};
pub use montecarlo::{derive_seed, monte_carlo_return, McOptions, CHUNK_SIZE, WILSON_Z};
pub use study::{return_exponent_study, StudyConfig, StudyPoint, StudyResult};

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};

pub(crate) type FxMap<K, V> = HashMap<K, V, BuildHasherDefault<FxHasher>>;

/// Probability values: exact rationals or doubles.
pub trait Mass: Clone + PartialOrd + Send + Sync + fmt::Debug + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn ratio(num: usize, den: usize) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn to_f64(&self) -> f64;
    /// Relative rounding error of one operation; zero for exact types.
    fn unit_roundoff() -> f64 {
        0.0
    }
}

impl Mass for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn ratio(num: usize, den: usize) -> Self {
        num as f64 / den as f64
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Mass for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(BigInt::from(1))
    }
    fn ratio(num: usize, den: usize) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// A finitely supported measure on a group with explicit truncation credit.
///
/// Invariant: Σ mass + lost_mass = 1.
#[derive(Clone, Debug)]
pub struct SparseDistribution<V: Mass = f64> {
    spec: GroupSpec,
    mass: FxMap<GroupElement, V>,
    lost_mass: V,
    step_count: usize,
}

impl<V: Mass> SparseDistribution<V> {
    /// The point mass at the identity.
    pub fn delta(spec: &GroupSpec) -> Self {
        let mut mass = FxMap::default();
        mass.insert(spec.identity(), V::one());
        SparseDistribution { spec: spec.clone(), mass, lost_mass: V::zero(), step_count: 0 }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn get(&self, g: &GroupElement) -> V {
        self.mass.get(g).cloned().unwrap_or_else(V::zero)
    }

    pub fn lost_mass(&self) -> &V {
        &self.lost_mass
    }

    pub fn step_count(&self) -> usize {
        self.step_count
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &V)> {
        self.mass.iter()
    }

    pub fn total_retained(&self) -> V {
        self.mass.values().fold(V::zero(), |acc, v| acc.add(v))
    }

    /// Mass at the identity, and that plus the lost mass.
    pub fn identity_bounds(&self) -> (V, V) {
        let p = self.get(&self.spec.identity());
        let up = p.add(&self.lost_mass);
        (p, up)
    }
}

/// Equal mass 1/|S| on the canonical symmetric generating set.
pub fn uniform_measure<V: Mass>(spec: &GroupSpec) -> SparseDistribution<V> {
    let gens = spec.generators();
    let k = gens.len();
    let mass = gens.into_iter().map(|g| (g, V::ratio(1, k))).collect();
    SparseDistribution { spec: spec.clone(), mass, lost_mass: V::zero(), step_count: 1 }
}

/// (d1 * d2)(g) = Σ_k d1(k) d2(k^{-1} g); entries below `epsilon` are dropped
/// into the lost mass.
pub fn convolve<V: Mass>(d1: &SparseDistribution<V>, d2: &SparseDistribution<V>, epsilon: &V) -> Result<SparseDistribution<V>> {
    if d1.spec != d2.spec {
        return Err(Error::GroupMismatch(format!("{} vs {}", d1.spec, d2.spec)));
    }
    let spec = &d1.spec;
    let mut out: FxMap<GroupElement, V> = FxMap::default();
    for (a, pa) in &d1.mass {
        for (b, pb) in &d2.mass {
            let g = spec.multiply_unchecked(a, b);
            let w = pa.mul(pb);
            match out.get_mut(&g) {
                Some(v) => *v = v.add(&w),
                None => {
                    out.insert(g, w);
                }
            }
        }
    }
    let mut dropped = V::zero();
    let zero = V::zero();
    if *epsilon > zero {
        out.retain(|_, v| {
            if *v < *epsilon {
                dropped = dropped.add(v);
                false
            } else {
                true
            }
        });
    }
    // 1 − (1 − l1)(1 − l2) of the mass is unaccounted for before truncation.
    let lost = d1.lost_mass.add(&d2.lost_mass).sub(&d1.lost_mass.mul(&d2.lost_mass)).add(&dropped);
    Ok(SparseDistribution { spec: spec.clone(), mass: out, lost_mass: lost, step_count: d1.step_count + d2.step_count })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMode {
    Exact,
    MonteCarlo,
}

/// A return probability estimate at step n.
///
/// Exact mode: certified bounds p_lower ≤ p_n ≤ p_upper (and the rational
/// value when computed without truncation). Monte Carlo mode: the hit
/// frequency p with its standard error and a 95% Wilson interval.
#[derive(Clone, Debug, Serialize)]
pub struct WalkEstimate {
    pub n: usize,
    pub p_lower: f64,
    pub p_upper: f64,
    pub p: f64,
    pub stderr: Option<f64>,
    #[serde(serialize_with = "ser_rational")]
    pub exact_value: Option<BigRational>,
    pub hits: Option<u64>,
    pub samples: Option<u64>,
    pub mode: EstimateMode,
}

fn ser_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ExponentVector;

    fn q(a: usize, b: usize) -> BigRational {
        BigRational::ratio(a, b)
    }

    #[test]
    fn uniform_measures() {
        let z = GroupSpec::free_abelian(1).unwrap();
        let mu: SparseDistribution<BigRational> = uniform_measure(&z);
        assert_eq!(mu.len(), 2);
        assert_eq!(mu.get(&GroupElement::Abelian(ExponentVector::from_slice(&[1]))), q(1, 2));
        let l = GroupSpec::lamplighter(2, 1).unwrap();
        let mu: SparseDistribution<BigRational> = uniform_measure(&l);
        assert_eq!(mu.len(), 3);
        for spec in ["zd:2", "lamplighter:p=3,d=2", "wreath-z:d=1", "free-metabelian:d=2", "p-metabelian:d=3,p=2"] {
            let spec = GroupSpec::parse(spec).unwrap();
            let mu: SparseDistribution<BigRational> = uniform_measure(&spec);
            for (g, p) in mu.iter() {
                assert_eq!(&mu.get(&spec.inverse(g).unwrap()), p);
            }
        }
    }

    #[test]
    fn convolution_examples() {
        let z = GroupSpec::free_abelian(1).unwrap();
        let mu: SparseDistribution<BigRational> = uniform_measure(&z);
        let mu2 = convolve(&mu, &mu, &<BigRational as Zero>::zero()).unwrap();
        let at = |i: i64| mu2.get(&GroupElement::Abelian(ExponentVector::from_slice(&[i])));
        assert_eq!((at(-2), at(0), at(2)), (q(1, 4), q(1, 2), q(1, 4)));
        let delta = SparseDistribution::<BigRational>::delta(&z);
        let same = convolve(&delta, &mu, &<BigRational as Zero>::zero()).unwrap();
        assert_eq!(same.mass, mu.mass);

        let l = GroupSpec::lamplighter(2, 1).unwrap();
        let mu: SparseDistribution<BigRational> = uniform_measure(&l);
        let mu2 = convolve(&mu, &mu, &<BigRational as Zero>::zero()).unwrap();
        assert_eq!(mu2.identity_bounds().0, q(1, 3));
        assert_eq!(mu2.total_retained(), q(1, 1));
    }

    #[test]
    fn truncation_accounting() {
        let l = GroupSpec::lamplighter(2, 1).unwrap();
        let mu: SparseDistribution<f64> = uniform_measure(&l);
        let mut d = mu.clone();
        for _ in 0..6 {
            let next = convolve(&d, &mu, &0.01).unwrap();
            assert!(next.lost_mass >= d.lost_mass);
            assert!((next.total_retained() + next.lost_mass - 1.0).abs() < 1e-12);
            d = next;
        }
        assert!(d.lost_mass > 0.0);
        let other = GroupSpec::free_abelian(1).unwrap();
        assert!(convolve(&d, &uniform_measure(&other), &0.0).is_err());
    }
}
