//! Building and exhaustively checking Følner couples for the lamplighter ring.

use metabelian::folner::{build_ring_couple, verify_couple, SizeBound, VerifyOptions};
use metabelian::groups::QuotientRing;
use metabelian::ring::Coefficients;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> metabelian::Result<()> {
    let ring = QuotientRing::new(Coefficients::prime_field(2)?, 1, vec![])?;
    let bound = SizeBound::parse("2^(4*m+1)*(4*m+1)", &[])?;
    for m in 0..=5usize {
        let couple = build_ring_couple(&ring, m, 1_000_000)?;
        let c0 = BigRational::new(BigInt::from(2 * m + 1), BigInt::from(4 * m + 1));
        let r = verify_couple(&couple, &c0, Some(&bound), &VerifyOptions::default())?;
        println!("m={m}: #Ω={} #Ω'={} c0={} passed={} sharp={:?}", r.size, r.size_prime, r.c0, r.passed(), r.sharp);
    }
    Ok(())
}
