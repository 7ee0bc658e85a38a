use std::hash::Hash;

use num_rational::BigRational;
use serde::Serialize;

use super::lattice::{LatticeModel, PackedState, Packer};
use super::{EstimateMode, FxMap, Mass, WalkEstimate};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Arithmetic {
    /// Exact rationals, no truncation.
    Rational,
    /// Doubles; entries below `epsilon` are dropped into the lost mass.
    Float { epsilon: f64 },
}

/// Why and where an exact run stopped early.
#[derive(Clone, Debug, Serialize)]
pub struct TruncationReport {
    /// The step that could not be completed.
    pub step: usize,
    pub elements: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactWalk {
    pub group: String,
    pub arithmetic: Arithmetic,
    pub estimates: Vec<WalkEstimate>,
    pub truncation: Option<TruncationReport>,
    pub peak_support: usize,
}

trait StepModel {
    type State: Clone + Eq + Hash;
    fn identity(&self) -> Self::State;
    fn n_gens(&self) -> usize;
    fn step(&self, s: &Self::State, g: usize) -> Self::State;
}

impl StepModel for Packer {
    type State = PackedState;
    fn identity(&self) -> PackedState {
        Packer::identity(self)
    }
    fn n_gens(&self) -> usize {
        Packer::n_gens(self)
    }
    fn step(&self, s: &PackedState, g: usize) -> PackedState {
        Packer::step(self, s, g)
    }
}

struct GenericModel {
    spec: GroupSpec,
    gens: Vec<GroupElement>,
    id: GroupElement,
}

impl StepModel for GenericModel {
    type State = GroupElement;
    fn identity(&self) -> GroupElement {
        self.id.clone()
    }
    fn n_gens(&self) -> usize {
        self.gens.len()
    }
    fn step(&self, s: &GroupElement, g: usize) -> GroupElement {
        self.spec.multiply_unchecked(s, &self.gens[g])
    }
}

fn estimate(n: usize, lo: f64, hi: f64, exact: Option<BigRational>) -> WalkEstimate {
    WalkEstimate {
        n,
        p_lower: lo,
        p_upper: hi,
        p: 0.5 * (lo + hi),
        stderr: None,
        exact_value: exact,
        hits: None,
        samples: None,
        mode: EstimateMode::Exact,
    }
}

struct Evolution {
    estimates: Vec<WalkEstimate>,
    truncation: Option<TruncationReport>,
    peak: usize,
}

/// Iterates μ^{(m)} = μ^{(m−1)} * μ up to m = n_max / 2.
///
/// Two routes bound p_n. At even m the identity mass gives p_m directly;
/// at every m the symmetry of μ gives p_{2m} = Σ_g μ^{(m)}(g)², which
/// reaches twice as far on the same support.
///
/// Writing T_k for the measure dropped at step k, the true distribution is
/// R_m + Σ_k T_k * μ^{(m−k)} with R_m the retained part. So the identity
/// mass is at most R_m(e) + Σ_k |T_k| sup μ^{(m−k)}, with
/// sup_x μ^{(r)}(x) ≤ p_{2⌊r/2⌋}, and by Young's inequality
/// ‖μ^{(m)}‖₂ ≤ ‖R_m‖₂ + Σ_k |T_k| ‖μ^{(m−k)}‖₂. Each dropped mass is
/// charged only through already certified bounds on shorter return
/// probabilities, which are nonincreasing in n.
fn evolve<M: StepModel, V: Mass>(
    model: &M,
    n_max: usize,
    epsilon: Option<V>,
    budget: usize,
    rational: impl Fn(&V) -> Option<BigRational>,
) -> Evolution {
    let k = model.n_gens();
    let weight = V::ratio(1, k);
    let identity = model.identity();
    let mut dist: FxMap<M::State, V> = FxMap::default();
    dist.insert(identity.clone(), V::one());
    let mut lost = V::zero();
    let mut peak = 1;
    // bounds[j], exact[j]: p_{2j}. dropped_at[k]: mass truncated at step k.
    let mut bounds: Vec<(f64, f64)> = vec![(1.0, 1.0)];
    let mut exact: Vec<Option<BigRational>> = vec![rational(&V::one())];
    let mut dropped_at = vec![0.0f64];
    let mut truncation = None;
    for step in 1..=n_max / 2 {
        let mut next: FxMap<M::State, V> = FxMap::default();
        next.reserve(dist.len() * 2);
        let mut overflow = false;
        for (s, m) in &dist {
            let w = m.mul(&weight);
            for g in 0..k {
                let t = model.step(s, g);
                match next.get_mut(&t) {
                    Some(v) => *v = v.add(&w),
                    None => {
                        next.insert(t, w.clone());
                    }
                }
            }
            if next.len() > budget {
                overflow = true;
                break;
            }
        }
        if overflow {
            truncation = Some(TruncationReport { step, elements: next.len(), budget });
            break;
        }
        drop(dist);
        let mut dropped = V::zero();
        if let Some(eps) = &epsilon {
            next.retain(|_, v| {
                if *v < *eps {
                    dropped = dropped.add(v);
                    false
                } else {
                    true
                }
            });
            lost = lost.add(&dropped);
        }
        dropped_at.push(dropped.to_f64());
        peak = peak.max(next.len());
        dist = next;

        // sup[j] bounds p_{2j} for j < step, using monotonicity.
        let mut sup = Vec::with_capacity(bounds.len());
        for b in &bounds {
            sup.push(sup.last().map_or(b.1, |&u: &f64| u.min(b.1)));
        }
        let charged = |f: &dyn Fn(usize) -> f64| (1..=step).map(|k| dropped_at[k] * f(step - k)).sum::<f64>();

        // First-order rounding budget: each mass went through `step` rounds of
        // one weight multiply and at most k additions; the square sum adds a
        // multiply per entry and one addition per entry.
        let u = V::unit_roundoff();
        let mass_err = (step * (k + 2)) as f64 * u;
        let square_err = 1.01 * (2.0 * mass_err + (dist.len() + 2) as f64 * u);
        let id_err = 1.01 * (mass_err + 2.0 * u);

        let square = dist.values().fold(V::zero(), |acc, v| acc.add(&v.mul(v)));
        let sq = square.to_f64();
        let lo = sq * (1.0 - square_err);
        let extra = charged(&|r| sup[r].sqrt());
        let hi = if extra == 0.0 { sq } else { (sq.sqrt() + extra) * (sq.sqrt() + extra) };
        bounds.push((lo, (hi * (1.0 + square_err)).min(1.0).max(lo)));
        exact.push(rational(&square));

        if step % 2 == 0 {
            let p = dist.get(&identity).cloned().unwrap_or_else(V::zero);
            let pf = p.to_f64();
            let lo = pf * (1.0 - id_err);
            let loose = p.add(&lost).to_f64();
            let hi = (loose.min(pf + charged(&|r| sup[r / 2])) * (1.0 + square_err)).min(1.0).max(lo);
            let b = &mut bounds[step / 2];
            *b = (b.0.max(lo), b.1.min(hi).max(b.0.max(lo)));
        }
    }
    let estimates = bounds
        .into_iter()
        .zip(exact)
        .enumerate()
        .take(n_max / 2 + 1)
        .map(|(j, ((lo, hi), ex))| estimate(2 * j, lo, hi, ex))
        .collect();
    Evolution { estimates, truncation, peak }
}

fn run<M: StepModel>(model: &M, n_max: usize, arithmetic: Arithmetic, budget: usize) -> Evolution {
    match arithmetic {
        Arithmetic::Rational => evolve::<M, BigRational>(model, n_max, None, budget, |v| Some(v.clone())),
        Arithmetic::Float { epsilon } => {
            let eps = (epsilon > 0.0).then_some(epsilon);
            evolve::<M, f64>(model, n_max, eps, budget, |_| None)
        }
    }
}

/// Return probabilities p_0, p_2, ..., p_{n_max} by iterated convolution.
///
/// The distribution is convolved up to n_max / 2 steps. In rational mode the
/// bounds coincide and carry the exact value. In float mode entries below
/// `epsilon` are dropped after each step and the bounds stay certified (see
/// `evolve`). If the support outgrows `budget_elements`, the estimates
/// computed so far are returned with a truncation report whose `step` is the
/// convolution depth that could not be completed.
pub fn exact_return_probabilities(
    spec: &GroupSpec,
    n_max: usize,
    arithmetic: Arithmetic,
    budget_elements: usize,
) -> Result<ExactWalk> {
    validate(n_max, arithmetic, budget_elements)?;
    if spec.generators().is_empty() {
        return Err(Error::argument(format!("{spec} has no generators to walk on")));
    }
    let packed = LatticeModel::from_spec(spec).and_then(|m| m.packer(n_max));
    let ev = match packed {
        Some(p) => run(&p, n_max, arithmetic, budget_elements),
        None => run(&generic(spec), n_max, arithmetic, budget_elements),
    };
    Ok(finish(spec, arithmetic, ev))
}

/// Same computation on plain group elements; used to cross-check the
/// packed representation.
#[cfg(test)]
pub(crate) fn exact_return_generic(
    spec: &GroupSpec,
    n_max: usize,
    arithmetic: Arithmetic,
    budget_elements: usize,
) -> Result<ExactWalk> {
    validate(n_max, arithmetic, budget_elements)?;
    Ok(finish(spec, arithmetic, run(&generic(spec), n_max, arithmetic, budget_elements)))
}

fn generic(spec: &GroupSpec) -> GenericModel {
    GenericModel { spec: spec.clone(), gens: spec.generators(), id: spec.identity() }
}

fn validate(n_max: usize, arithmetic: Arithmetic, budget: usize) -> Result<()> {
    if n_max % 2 != 0 {
        return Err(Error::argument(format!("n_max = {n_max} must be even")));
    }
    if budget == 0 {
        return Err(Error::argument("element budget must be positive"));
    }
    if let Arithmetic::Float { epsilon } = arithmetic {
        if !(epsilon >= 0.0) {
            return Err(Error::argument(format!("epsilon = {epsilon} must be nonnegative")));
        }
    }
    Ok(())
}

fn finish(spec: &GroupSpec, arithmetic: Arithmetic, ev: Evolution) -> ExactWalk {
    ExactWalk {
        group: spec.to_string(),
        arithmetic,
        estimates: ev.estimates,
        truncation: ev.truncation,
        peak_support: ev.peak,
    }
}
