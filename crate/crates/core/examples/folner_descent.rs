//! Pushing a couple down to a quotient group.

use metabelian::folner::{build_ring_couple, quotient_descent, verify_couple, Projection, VerifyOptions};
use metabelian::groups::QuotientRing;
use metabelian::ring::Coefficients;
use num_rational::BigRational;

fn main() -> metabelian::Result<()> {
    let ring = QuotientRing::new(Coefficients::prime_field(2)?, 1, vec![])?;
    for m in 1..=3 {
        let couple = build_ring_couple(&ring, m, 1_000_000)?;
        let d = quotient_descent(&couple, Projection::Cursor, m, 1_000_000)?;
        let c0 = BigRational::from_float(d.implied_c0()).expect("finite");
        let c0 = c0.min(BigRational::new(1.into(), 2.into()));
        let r = verify_couple(&d.couple, &c0, None, &VerifyOptions::default())?;
        println!("m={m}: boundary ratio {:.4}, image sizes {}/{}, passes: {}", d.ratio, r.size, r.size_prime, r.passed());
    }
    Ok(())
}
