use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Decay models for return probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitModel {
    /// log p = log C − c·n^α.
    StretchedExp,
    /// log p = log C − c·n^α (log n)^γ with γ held fixed.
    StretchedExpLog { gamma: f64 },
    /// log p = log C − β·log n; β is reported as `alpha`.
    PowerLaw,
}

impl FitModel {
    pub fn name(&self) -> &'static str {
        match self {
            FitModel::StretchedExp => "stretched_exp",
            FitModel::StretchedExpLog { .. } => "stretched_exp_log",
            FitModel::PowerLaw => "power_law",
        }
    }

    /// Parses `stretched_exp`, `power_law` or `stretched_exp_log[:gamma]`.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("stretched_exp", None) => Ok(FitModel::StretchedExp),
            ("power_law", None) => Ok(FitModel::PowerLaw),
            ("stretched_exp_log", a) => {
                let gamma = match a {
                    Some(a) => a.trim_start_matches("gamma=").parse().map_err(|_| Error::parse(format!("bad gamma in {s:?}")))?,
                    None => 0.0,
                };
                Ok(FitModel::StretchedExpLog { gamma })
            }
            _ => Err(Error::parse(format!("unknown model {s:?}"))),
        }
    }

    fn gamma(&self) -> f64 {
        match self {
            FitModel::StretchedExpLog { gamma } => *gamma,
            _ => 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    /// Points with n below this are ignored.
    pub min_n: f64,
    /// Bootstrap resamples for the interval on alpha; 0 disables it.
    pub bootstrap: usize,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { min_n: 64.0, bootstrap: 200, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitResult {
    pub model: String,
    pub alpha: f64,
    pub c: f64,
    pub gamma: f64,
    pub log_prefactor: f64,
    pub alpha_ci: (f64, f64),
    /// Euclidean norm of the residuals in log p.
    pub residual_norm: f64,
    pub n_points: usize,
}

const GRID: usize = 1000;
const ALPHA_MIN: f64 = 1e-3;

/// Least squares of y on [1, x]; returns (intercept, slope, residual sum of squares).
pub(crate) fn linear_ls(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if !(sxx > 0.0) || !sxx.is_finite() {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    Some((intercept, slope, rss))
}

struct Fitted {
    alpha: f64,
    c: f64,
    log_prefactor: f64,
    rss: f64,
}

fn stretched_basis(ns: &[f64], alpha: f64, gamma: f64) -> Vec<f64> {
    ns.iter().map(|n| n.powf(alpha) * n.ln().powf(gamma)).collect()
}

fn fit_core(ns: &[f64], ys: &[f64], model: FitModel) -> Option<Fitted> {
    if let FitModel::PowerLaw = model {
        let x: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
        let (a, b, rss) = linear_ls(&x, ys)?;
        return Some(Fitted { alpha: -b, c: -b, log_prefactor: a, rss });
    }
    let gamma = model.gamma();
    let alpha = minimize_1d(ALPHA_MIN, 1.0, |alpha| {
        linear_ls(&stretched_basis(ns, alpha, gamma), ys).map_or(f64::INFINITY, |r| r.2)
    });
    let (intercept, slope, rss) = linear_ls(&stretched_basis(ns, alpha, gamma), ys)?;
    Some(Fitted { alpha, c: -slope, log_prefactor: intercept, rss })
}

/// Minimizer of `f` on [lo, hi]: a uniform grid of 1000 points, then golden
/// section inside the cell pair around the best grid point.
pub(crate) fn minimize_1d(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let step = (hi - lo) / (GRID - 1) as f64;
    let grid: Vec<f64> = (0..GRID).map(|i| lo + step * i as f64).collect();
    let scores: Vec<f64> = grid.iter().map(|&a| f(a)).collect();
    let best = (0..GRID).min_by(|&i, &j| scores[i].total_cmp(&scores[j])).expect("nonempty grid");
    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(GRID - 1)];
    let rss_at = f;
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (rss_at(a), rss_at(b));
    for _ in 0..200 {
        if hi - lo < 1e-13 {
            break;
        }
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = rss_at(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = rss_at(b);
        }
    }
    0.5 * (lo + hi)
}

/// Fits a decay model to (n, p) data by least squares in log p.
///
/// Stretched models search α over (0, 1] with a grid followed by golden
/// section; for fixed α the remaining parameters solve a linear problem.
/// The interval on α is a seeded percentile bootstrap over the points,
/// widened if needed so that it contains the point estimate.
pub fn fit_exponent(data: &[(f64, f64)], model: FitModel, opts: &FitOptions) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = data.iter().copied().filter(|(n, _)| *n >= opts.min_n).collect();
    if pts.len() < 4 {
        return Err(Error::Fit(format!("need at least 4 points with n >= {}, got {}", opts.min_n, pts.len())));
    }
    if let Some((n, p)) = pts.iter().find(|(n, p)| !(*p > 0.0 && *p <= 1.0) || !(*n > 1.0) || !n.is_finite()) {
        return Err(Error::Fit(format!("point (n = {n}, p = {p}) outside n > 1, 0 < p <= 1")));
    }
    let ns: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    if ys.iter().all(|y| (y - ys[0]).abs() <= 1e-14 * ys[0].abs().max(1.0)) {
        return Err(Error::Fit("degenerate data: p is constant".into()));
    }
    let fitted = fit_core(&ns, &ys, model).ok_or_else(|| Error::Fit("degenerate data: fewer than two distinct n".into()))?;
    if model != FitModel::PowerLaw && !(fitted.c > 0.0) {
        return Err(Error::Fit(format!("data does not decay (fitted scale {})", fitted.c)));
    }

    let mut ci = (fitted.alpha, fitted.alpha);
    if opts.bootstrap > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut alphas = Vec::with_capacity(opts.bootstrap);
        for _ in 0..opts.bootstrap {
            let idx: Vec<usize> = (0..ns.len()).map(|_| rng.gen_range(0..ns.len())).collect();
            let bn: Vec<f64> = idx.iter().map(|&i| ns[i]).collect();
            let by: Vec<f64> = idx.iter().map(|&i| ys[i]).collect();
            if let Some(f) = fit_core(&bn, &by, model) {
                alphas.push(f.alpha);
            }
        }
        if !alphas.is_empty() {
            alphas.sort_by(f64::total_cmp);
            let q = |t: f64| alphas[((alphas.len() - 1) as f64 * t).round() as usize];
            ci = (q(0.025).min(fitted.alpha), q(0.975).max(fitted.alpha));
        }
    }
    Ok(FitResult {
        model: model.name().into(),
        alpha: fitted.alpha,
        c: fitted.c,
        gamma: model.gamma(),
        log_prefactor: fitted.log_prefactor,
        alpha_ci: ci,
        residual_norm: fitted.rss.sqrt(),
        n_points: ns.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(alpha: f64) -> Vec<(f64, f64)> {
        (1..=2048).map(|i| 2.0 * i as f64).map(|n| (n, (-0.8 * n.powf(alpha)).exp())).collect()
    }

    #[test]
    fn recovers_stretched_exponents() {
        let opts = FitOptions { min_n: 0.0, bootstrap: 20, seed: 1 };
        for alpha in [1.0 / 3.0, 0.5, 0.6] {
            let f = fit_exponent(&synthetic(alpha), FitModel::StretchedExp, &opts).unwrap();
            assert!((f.alpha - alpha).abs() < 1e-6, "{alpha}: {f:?}");
            assert!((f.c - 0.8).abs() < 1e-5);
            assert!(f.alpha_ci.0 <= f.alpha && f.alpha <= f.alpha_ci.1);
        }
    }

    #[test]
    fn recovers_power_law_and_log_model() {
        let data: Vec<(f64, f64)> = (1..=100).map(|i| (2.0 * i as f64, 1.0 / (2.0 * i as f64))).collect();
        let f = fit_exponent(&data, FitModel::PowerLaw, &FitOptions { min_n: 0.0, ..Default::default() }).unwrap();
        assert!((f.alpha - 1.0).abs() < 1e-9);
        let data: Vec<(f64, f64)> = (32..=400).map(|i| i as f64 * 8.0).map(|n| (n, (-(n.powf(0.5) * n.ln().powf(0.5)) * 0.1).exp())).collect();
        let f = fit_exponent(&data, FitModel::StretchedExpLog { gamma: 0.5 }, &FitOptions::default()).unwrap();
        assert!((f.alpha - 0.5).abs() < 1e-6, "{f:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let opts = FitOptions::default();
        let flat: Vec<(f64, f64)> = (0..10).map(|i| (100.0 + i as f64, 0.5)).collect();
        assert!(matches!(fit_exponent(&flat, FitModel::StretchedExp, &opts), Err(Error::Fit(_))));
        assert!(fit_exponent(&flat[..3], FitModel::StretchedExp, &opts).is_err());
        let bad: Vec<(f64, f64)> = (0..10).map(|i| (100.0 + i as f64, 0.0)).collect();
        assert!(fit_exponent(&bad, FitModel::StretchedExp, &opts).is_err());
        assert!(fit_exponent(&synthetic(0.5), FitModel::StretchedExp, &FitOptions { min_n: 1e9, ..opts }).is_err());
    }

    #[test]
    fn model_names_parse() {
        assert_eq!(FitModel::parse("stretched_exp").unwrap(), FitModel::StretchedExp);
        assert_eq!(FitModel::parse("stretched_exp_log:0.5").unwrap(), FitModel::StretchedExpLog { gamma: 0.5 });
        assert!(FitModel::parse("cubic").is_err());
    }
}
