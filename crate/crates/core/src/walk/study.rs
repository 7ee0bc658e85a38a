use serde::Serialize;

use super::exact::{exact_return_probabilities, Arithmetic, TruncationReport};
use super::fit::{fit_exponent, FitModel, FitOptions, FitResult};
use super::montecarlo::{monte_carlo_return, McOptions};
use super::{EstimateMode, WalkEstimate};
use crate::error::Result;
use crate::groups::GroupSpec;

/// Protocol for estimating the decay exponent of p_n on one group.
#[derive(Clone, Debug, Serialize)]
pub struct StudyConfig {
    pub exact_nmax: usize,
    pub epsilon: f64,
    pub budget_elements: usize,
    pub mc_ns: Vec<usize>,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub model: FitModel,
    pub min_n: usize,
    /// Exact points are used only while p_upper / p_lower stays below this.
    pub max_bracket_ratio: f64,
    /// Monte Carlo points need at least this many hits.
    pub min_hits: u64,
    pub bootstrap: usize,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            exact_nmax: 512,
            epsilon: 1e-10,
            budget_elements: 4_000_000,
            mc_ns: vec![1024, 2048, 4096],
            samples: 10_000_000,
            seed: 0,
            threads: 1,
            model: FitModel::StretchedExp,
            min_n: 64,
            max_bracket_ratio: 1.1,
            min_hits: 10,
            bootstrap: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StudyPoint {
    pub estimate: WalkEstimate,
    pub used: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StudyResult {
    pub group: String,
    pub points: Vec<StudyPoint>,
    pub truncation: Option<TruncationReport>,
    /// None when too few usable points survived the filters.
    pub fit: Option<FitResult>,
    pub fit_error: Option<String>,
}

impl StudyResult {
    pub fn fit_data(&self) -> Vec<(f64, f64)> {
        self.points.iter().filter(|p| p.used).map(|p| (p.estimate.n as f64, p.estimate.p)).collect()
    }
}

fn screen(e: &WalkEstimate, cfg: &StudyConfig) -> Option<String> {
    if e.n < cfg.min_n {
        return Some(format!("n < {}", cfg.min_n));
    }
    match e.mode {
        EstimateMode::Exact => {
            if !(e.p_lower > 0.0) {
                Some("no retained mass at the identity".into())
            } else if e.p_upper / e.p_lower > cfg.max_bracket_ratio {
                Some(format!("bracket ratio {:.3} above {}", e.p_upper / e.p_lower, cfg.max_bracket_ratio))
            } else {
                None
            }
        }
        EstimateMode::MonteCarlo => {
            let hits = e.hits.unwrap_or(0);
            (hits < cfg.min_hits).then(|| format!("{hits} hits, fewer than {}", cfg.min_hits))
        }
    }
}

/// Runs the exact engine up to `exact_nmax`, Monte Carlo at `mc_ns`, keeps the
/// points that pass the quality screens and fits the decay model to them.
///
/// An exact point's value is the midpoint of its certified bracket; Monte Carlo
/// points are hit frequencies. Screened-out points are kept with a note.
pub fn return_exponent_study(spec: &GroupSpec, cfg: &StudyConfig) -> Result<StudyResult> {
    let exact = exact_return_probabilities(spec, cfg.exact_nmax, Arithmetic::Float { epsilon: cfg.epsilon }, cfg.budget_elements)?;
    let mut estimates = exact.estimates;
    if !cfg.mc_ns.is_empty() {
        let opts = McOptions { samples: cfg.samples, seed: cfg.seed, threads: cfg.threads };
        estimates.extend(monte_carlo_return(spec, &cfg.mc_ns, &opts)?);
    }
    let points: Vec<StudyPoint> = estimates
        .into_iter()
        .map(|estimate| {
            let note = screen(&estimate, cfg);
            StudyPoint { used: note.is_none(), note, estimate }
        })
        .collect();
    let mut result = StudyResult { group: spec.to_string(), points, truncation: exact.truncation, fit: None, fit_error: None };
    let opts = FitOptions { min_n: cfg.min_n as f64, bootstrap: cfg.bootstrap, seed: cfg.seed };
    match fit_exponent(&result.fit_data(), cfg.model, &opts) {
        Ok(f) => result.fit = Some(f),
        Err(e) => result.fit_error = Some(e.to_string()),
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_study_on_the_line() {
        // On Z, p_n ~ sqrt(2/(πn)): a power law with exponent 1/2.
        let spec = GroupSpec::free_abelian(1).unwrap();
        let cfg = StudyConfig {
            exact_nmax: 400,
            epsilon: 0.0,
            mc_ns: vec![],
            model: FitModel::PowerLaw,
            min_n: 100,
            bootstrap: 10,
            ..Default::default()
        };
        let r = return_exponent_study(&spec, &cfg).unwrap();
        let f = r.fit.unwrap();
        assert!((f.alpha - 0.5).abs() < 0.01, "{f:?}");
        assert!(r.points.iter().any(|p| !p.used));
    }
}
