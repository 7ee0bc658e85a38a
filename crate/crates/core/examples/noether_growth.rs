//! Growth of truncated quotients tracks the Krull dimension.

use metabelian::folner::{fit_growth, noether_size_count};
use metabelian::groups::QuotientRing;
use metabelian::ring::{Coefficients, LaurentPolynomial};

fn main() -> metabelian::Result<()> {
    let f2 = Coefficients::prime_field(2)?;
    let rings = [
        ("F_2[X,Y]/(Y - X^2)", vec![LaurentPolynomial::parse("X2 - X1^2", 2, f2)?]),
        ("F_2[X,Y]", vec![]),
    ];
    let ms: Vec<usize> = (1..=8).collect();
    for (name, rels) in rings {
        let ring = QuotientRing::new(f2, 2, rels)?;
        let sizes = ms.iter().map(|&m| noether_size_count(&ring, m, 10_000)).collect::<metabelian::Result<Vec<_>>>()?;
        let fit = fit_growth(&sizes, &ms)?;
        println!("{name}: k_hat = {:.3}", fit.k_hat);
    }
    Ok(())
}
