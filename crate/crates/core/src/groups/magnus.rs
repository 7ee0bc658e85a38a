use serde::Serialize;

use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

/// The matrix (b, m; 0, 1) with b ∈ Z^d and m in the free module of rank d
/// over Z[Z^d] (or (Z/k)[Z^d] for the k-metabelian quotient).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MagnusElement {
    pub abelian: ExponentVector,
    pub module: Vec<LaurentPolynomial>,
}

impl MagnusElement {
    pub fn identity(d: usize, coeffs: Coefficients) -> Self {
        MagnusElement { abelian: ExponentVector::zero(d), module: vec![LaurentPolynomial::zero(d, coeffs); d] }
    }

    /// Image of the free generator s_i (zero-based): (a_i, e_i).
    pub fn generator(d: usize, i: usize, coeffs: Coefficients) -> Self {
        let mut module = vec![LaurentPolynomial::zero(d, coeffs); d];
        module[i] = LaurentPolynomial::one(d, coeffs);
        MagnusElement { abelian: ExponentVector::basis(d, i), module }
    }
}

/// (b, m)(b', m') = (b + b', m + X^b m').
pub(crate) fn multiply(a: &MagnusElement, b: &MagnusElement) -> MagnusElement {
    let module = a.module.iter().zip(b.module.iter()).map(|(x, y)| x + &y.shift(&a.abelian)).collect();
    MagnusElement { abelian: &a.abelian + &b.abelian, module }
}

/// (b, m)^{-1} = (−b, −X^{−b} m).
pub(crate) fn inverse(a: &MagnusElement) -> MagnusElement {
    let back = -&a.abelian;
    let module = a.module.iter().map(|x| -&x.shift(&back)).collect();
    MagnusElement { abelian: back, module }
}
