//! Transcendental monomial families and the special subgroups they certify.

use metabelian::krull::{find_transcendental_monomials, fitting_ideal0, krull_report, special_subgroup_witness, ModulePresentation};
use metabelian::ring::Coefficients;

fn main() -> metabelian::Result<()> {
    for text in ["ring char=Z d=2 gens=1 torsion=2\n", "ring char=Z d=1 gens=1\n", "ring char=Z d=2 gens=1\n1\n"] {
        let pres = ModulePresentation::parse(text)?;
        let report = krull_report(&pres, &[])?;
        let witness = special_subgroup_witness(&report, &pres)?;
        println!("{}  =>  {:?}", text.lines().next().unwrap_or(""), witness.kind);
    }
    // The parabola Y = X^2 over F_2 has one free monomial.
    let pres = ModulePresentation::parse("ring char=2 d=2 gens=1\nX2 - X1^2\n")?;
    let family = find_transcendental_monomials(&fitting_ideal0(&pres), 2, Coefficients::prime_field(2)?, 1)?;
    println!("parabola: {family:?}");
    Ok(())
}
