//! Reduced Gröbner bases and the dimension of a polynomial quotient.

use metabelian::grobner::{buchberger, ideal_dimension, MonomialOrder, PolyIdeal};
use metabelian::krull::laurent_quotient_dimension;
use metabelian::ring::{Coefficients, LaurentPolynomial};

fn main() -> metabelian::Result<()> {
    let q = Coefficients::Rational;
    let twisted_cubic = ["X1^2 - X2", "X1*X2 - X3", "X1*X3 - X2^2"];
    let gens = twisted_cubic.iter().map(|s| LaurentPolynomial::parse(s, 3, q)).collect::<metabelian::Result<Vec<_>>>()?;
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        let gb = buchberger(&PolyIdeal::new(3, q, order.clone(), gens.clone())?)?;
        println!("{order}: dimension {}", ideal_dimension(&gb));
        for g in gb.basis() {
            println!("  {g}");
        }
    }
    // X1*X2 = 0 has dimension 1 as a polynomial ideal but is the unit ideal once X1, X2 are inverted.
    let xy = LaurentPolynomial::parse("X1*X2", 2, q)?;
    println!("Laurent quotient by X1*X2: {}", laurent_quotient_dimension(&[xy], 2, q)?);
    Ok(())
}
