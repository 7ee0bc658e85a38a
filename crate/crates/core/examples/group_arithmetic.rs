//! Words in wreath products, Magnus groups and ring semidirect products.

use metabelian::groups::{verify_relations, GroupSpec, Relation};

fn main() -> metabelian::Result<()> {
    for spec in ["lamplighter:p=2,d=1", "wreath-z:d=2", "free-metabelian:d=2", "p-metabelian:d=2,p=3"] {
        let g = GroupSpec::parse(spec)?;
        // Generators are numbered from 1; negative letters are inverses.
        let commutator = g.word_evaluate(&[1, 2, -1, -2])?;
        println!("{g}: [s1,s2] is trivial: {}", commutator == g.identity());
        let report = verify_relations(&g, &[Relation::metabelian_law()], 50, 1)?;
        println!("  metabelian law over 50 random quadruples: {}", if report.all_pass() { "holds" } else { "fails" });
    }
    let b = GroupSpec::parse("p-metabelian:d=2,p=5")?;
    let report = verify_relations(&b, &[Relation::commutator_power(5)], 50, 2)?;
    println!("{b}: [w1,w2]^5 = e: {}", report.all_pass());
    Ok(())
}
