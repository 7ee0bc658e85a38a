//! Laurent polynomial arithmetic over several coefficient rings.

use metabelian::ring::{Coefficients, LaurentPolynomial};

fn main() -> metabelian::Result<()> {
    for coeffs in [Coefficients::Integer, Coefficients::Rational, Coefficients::prime_field(3)?, Coefficients::integers_mod(6)?] {
        let f = LaurentPolynomial::parse("2*X1^-1*X2 + 3*X1 - 1", 2, coeffs)?;
        let g = LaurentPolynomial::parse("X1*X2^-1 + 1", 2, coeffs)?;
        let prod = f.try_mul(&g)?;
        println!("over {coeffs}: ({f}) * ({g}) = {prod}");
        println!("  f^3 = {}", f.pow(3));
    }
    Ok(())
}
