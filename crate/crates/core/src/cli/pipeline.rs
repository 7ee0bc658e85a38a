use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::krull::{krull_report, KrullReport, ModulePresentation};
use crate::ring::{Coefficients, LaurentPolynomial};
use crate::walk::{return_exponent_study, StudyConfig, StudyResult};

/// Decay exponent separating Krull dimension at most 1 from the rest.
pub const THRESHOLD_ALPHA: f64 = 1.0 / 3.0;

/// Engineering defaults for the verdict, not derived constants.
pub const DEFAULT_TOL: f64 = 0.08;
pub const DEFAULT_MARGIN: f64 = 0.08;

fn koszul(d: usize, coeffs: Coefficients) -> Result<ModulePresentation> {
    // Generators u_ij (i < j); relations (X_i−1)u_jk − (X_j−1)u_ik + (X_k−1)u_ij.
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    if pairs.is_empty() {
        return Err(Error::argument("the free metabelian group of rank 1 is abelian"));
    }
    let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).expect("pair");
    let x1 = |i: usize| &LaurentPolynomial::var(d, i, coeffs) - &LaurentPolynomial::one(d, coeffs);
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let mut row = vec![LaurentPolynomial::zero(d, coeffs); pairs.len()];
                row[idx(j, k)] = x1(i);
                row[idx(i, k)] = -&x1(j);
                row[idx(i, j)] = x1(k);
                rows.push(row);
            }
        }
    }
    ModulePresentation::new(coeffs, d, pairs.len(), rows)
}

fn torsion(k: u64) -> Result<Coefficients> {
    Ok(if crate::ring::is_prime(k) { Coefficients::PrimeField(k) } else { Coefficients::Integer })
}

/// The derived subgroup of a built-in group as a module over Z[Z^d].
///
/// Wreath products give the free lamp module. Free metabelian groups give the
/// kernel of Z[Z^d]^d → Z[Z^d], e_i ↦ X_i − 1, presented by its Koszul
/// generators and relations. Ring semidirect products give the direct sum of
/// their rings.
pub fn derived_module(spec: &GroupSpec) -> Result<ModulePresentation> {
    let d = spec.rank();
    match spec {
        GroupSpec::Wreath { lamp, .. } => match lamp.modulus {
            Some(k) => {
                let c = torsion(k)?;
                let m = ModulePresentation::free(c, d, lamp.components)?;
                if c == Coefficients::Integer {
                    m.with_characteristic(k)
                } else {
                    Ok(m)
                }
            }
            None => ModulePresentation::free(Coefficients::Integer, d, lamp.components)?.with_torsion_free(),
        },
        GroupSpec::Magnus { coeffs, .. } => match coeffs {
            Coefficients::Integer => koszul(d, Coefficients::Integer)?.with_torsion_free(),
            Coefficients::PrimeField(_) => koszul(d, *coeffs),
            Coefficients::IntegersMod(k) => koszul(d, Coefficients::Integer)?.with_characteristic(*k),
            Coefficients::Rational => Err(Error::UnsupportedCoefficients("Q".into())),
        },
        GroupSpec::RingSemidirect { rings, .. } => {
            let mut parts = rings.iter().map(|r| ModulePresentation::cyclic(r.coeffs(), d, r.relations().to_vec()));
            let first = parts.next().expect("at least one ring")?;
            parts.try_fold(first, |acc, p| acc.direct_sum(&p?))
        }
        other => Err(Error::argument(format!("no derived-module presentation is known for {other}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAVerdict {
    pub group: String,
    pub krull: KrullReport,
    pub krull_group: usize,
    /// k/(k+2), the exponent of the class lower bound exp(−n^{k/(k+2)}).
    pub predicted_alpha: f64,
    pub alpha: f64,
    pub tol: f64,
    pub margin: f64,
    pub rule: String,
    pub consistent: bool,
    pub study: StudyResult,
}

/// Krull dimension, return-probability study and the resulting verdict:
/// consistent when k ≤ 1 and α ≤ 1/3 + tol, or k ≥ 2 and α ≥ 1/3 + margin.
pub fn pipeline_theorem_a(spec: &GroupSpec, study: &StudyConfig, tol: f64, margin: f64) -> Result<TheoremAVerdict> {
    let krull = krull_report(&derived_module(spec)?, &[])?;
    let k = krull.krull_group;
    let result = return_exponent_study(spec, study)?;
    let fit = result.fit.clone().ok_or_else(|| Error::Fit(result.fit_error.clone().unwrap_or_default()))?;
    let (consistent, rule) = if k <= 1 {
        (fit.alpha <= THRESHOLD_ALPHA + tol, format!("k <= 1 requires alpha <= 1/3 + {tol}"))
    } else {
        (fit.alpha >= THRESHOLD_ALPHA + margin, format!("k >= 2 requires alpha >= 1/3 + {margin}"))
    };
    Ok(TheoremAVerdict {
        group: spec.to_string(),
        krull_group: k,
        krull,
        predicted_alpha: k as f64 / (k as f64 + 2.0),
        alpha: fit.alpha,
        tol,
        margin,
        rule,
        consistent,
        study: result,
    })
}
