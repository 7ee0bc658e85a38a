//! Fitting stretched-exponential and power-law decay.

use metabelian::walk::{fit_exponent, FitModel, FitOptions};

fn main() -> metabelian::Result<()> {
    let stretched: Vec<(f64, f64)> = (1..=40).map(|i| {
        let n = 16.0 * i as f64;
        (n, 0.7 * (-1.3 * n.powf(0.5)).exp())
    }).collect();
    let power: Vec<(f64, f64)> = (1..=40).map(|i| {
        let n = 16.0 * i as f64;
        (n, 2.0 * n.powf(-1.5))
    }).collect();
    let opts = FitOptions { min_n: 0.0, bootstrap: 100, seed: 3 };
    let a = fit_exponent(&stretched, FitModel::parse("stretched_exp")?, &opts)?;
    let b = fit_exponent(&power, FitModel::parse("power_law")?, &opts)?;
    println!("stretched exponential: alpha = {:.6} (true 0.5), interval {:?}", a.alpha, a.alpha_ci);
    println!("power law: {:?}", b);
    Ok(())
}
