use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::fit::{linear_ls, minimize_1d};

const K_MAX: f64 = 4.0;

/// Fit of log #Ω_m ≈ a + b·m^k.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthFit {
    pub k_hat: f64,
    /// The scale b.
    pub c: f64,
    /// The offset a, i.e. log C.
    pub log_c: f64,
    pub residual_norm: f64,
    pub ms: Vec<f64>,
    pub log_sizes: Vec<f64>,
}

/// Natural logarithm of an arbitrarily large integer.
pub(crate) fn ln_big(v: &BigUint) -> f64 {
    let shift = v.bits().saturating_sub(60);
    let top = (v >> shift).to_f64().expect("60 bits fit");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fits log size against a + b·m^k with k searched over (0, 4].
pub fn fit_growth(sizes: &[BigUint], ms: &[usize]) -> Result<GrowthFit> {
    if sizes.iter().any(|s| s.bits() == 0) {
        return Err(Error::Fit("sizes must be positive".into()));
    }
    let logs: Vec<f64> = sizes.iter().map(ln_big).collect();
    let ms: Vec<f64> = ms.iter().map(|&m| m as f64).collect();
    fit_growth_log(&logs, &ms)
}

/// As [`fit_growth`], from log sizes and real radii.
pub fn fit_growth_log(log_sizes: &[f64], ms: &[f64]) -> Result<GrowthFit> {
    if log_sizes.len() != ms.len() {
        return Err(Error::Fit(format!("{} sizes for {} radii", log_sizes.len(), ms.len())));
    }
    if ms.len() < 4 {
        return Err(Error::Fit(format!("need at least 4 points, got {}", ms.len())));
    }
    if ms.windows(2).any(|w| !(w[1] > w[0])) || ms[0] < 0.0 {
        return Err(Error::Fit("radii must be nonnegative and increasing".into()));
    }
    if log_sizes.iter().any(|y| !y.is_finite()) {
        return Err(Error::Fit("sizes must be finite and positive".into()));
    }
    if log_sizes.iter().all(|y| (y - log_sizes[0]).abs() <= 1e-12 * log_sizes[0].abs().max(1.0)) {
        return Err(Error::Fit("degenerate data: sizes are constant".into()));
    }
    let basis = |k: f64| ms.iter().map(|m| m.powf(k)).collect::<Vec<f64>>();
    let k_hat = minimize_1d(1e-3, K_MAX, |k| linear_ls(&basis(k), log_sizes).map_or(f64::INFINITY, |r| r.2));
    let (log_c, c, rss) = linear_ls(&basis(k_hat), log_sizes).ok_or_else(|| Error::Fit("degenerate radii".into()))?;
    if !(c > 0.0) {
        return Err(Error::Fit(format!("sizes do not grow (fitted scale {c})")));
    }
    Ok(GrowthFit { k_hat, c, log_c, residual_norm: rss.sqrt(), ms: ms.to_vec(), log_sizes: log_sizes.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_exponents() {
        let ms: Vec<f64> = (1..=8).map(f64::from).collect();
        let squares: Vec<f64> = ms.iter().map(|m| m * m).collect();
        let f = fit_growth_log(&squares, &ms).unwrap();
        assert!((f.k_hat - 2.0).abs() < 1e-3, "{f:?}");
        let lamp: Vec<BigUint> = (1..=8u32).map(|m| BigUint::from(2u32).pow(4 * m + 1) * (4 * m + 1)).collect();
        let f = fit_growth(&lamp, &(1..=8).collect::<Vec<_>>()).unwrap();
        assert!((f.k_hat - 1.0).abs() < 0.15, "{f:?}");
    }

    #[test]
    fn degenerate_inputs() {
        let ms = [1.0, 2.0, 3.0, 4.0];
        assert!(fit_growth_log(&[5.0; 4], &ms).is_err());
        assert!(fit_growth_log(&[1.0, 2.0, 3.0], &ms[..3]).is_err());
        assert!(fit_growth_log(&[1.0, 2.0, 3.0, 4.0], &[1.0, 1.0, 2.0, 3.0]).is_err());
        assert!(fit_growth_log(&[4.0, 3.0, 2.0, 1.0], &ms).is_err());
        assert!(fit_growth(&vec![BigUint::from(0u32); 4], &[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn logs_of_huge_integers() {
        let v = BigUint::from(3u32).pow(1000);
        assert!((ln_big(&v) - 1000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(ln_big(&BigUint::from(1u32)), 0.0);
    }
}
