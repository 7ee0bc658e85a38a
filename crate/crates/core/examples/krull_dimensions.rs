//! Krull dimensions of the derived modules of some classical metabelian groups.

use metabelian::krull::{krull_report, ModulePresentation};

fn main() -> metabelian::Result<()> {
    let cases = [
        ("lamplighter F_2 wr Z", "ring char=2 d=1 gens=1\n"),
        ("F_3 wr Z^3", "ring char=3 d=3 gens=1\n"),
        ("Z wr Z^2", "ring char=Z d=2 gens=1\n"),
        ("Baumslag-Solitar BS(1,2)", "ring char=Z d=1 gens=1\nX1 - 2\n"),
        ("torsion plus free part", "ring char=Z d=1 gens=2\n3, 0\n"),
    ];
    for (name, text) in cases {
        let report = krull_report(&ModulePresentation::parse(text)?, &[2, 3])?;
        println!("{name}: {report}");
    }
    Ok(())
}
