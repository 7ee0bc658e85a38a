//! A non-split extension given by a cocycle, and its embedding into a wreath product.

use metabelian::groups::{kk_embed, kk_homomorphism_holds, CocycleExtension, MagnusSectionCocycle};
use metabelian::groups::MagnusElement;
use metabelian::ring::{Coefficients, ExponentVector};

fn main() {
    let z = Coefficients::Integer;
    let ext = CocycleExtension::magnus(2, z);
    let section = MagnusSectionCocycle { d: 2, coeffs: z };
    let g = section.from_magnus(&MagnusElement::generator(2, 0, z));
    let h = section.from_magnus(&MagnusElement::generator(2, 1, z));
    let support: Vec<ExponentVector> =
        (-2..=2).flat_map(|a| (-2..=2).map(move |b| ExponentVector::from_slice(&[a, b]))).collect();
    let table = kk_embed(&ext, &ext.multiply(&g, &h), &support);
    println!("image of s1*s2 has cursor {}", table.cursor);
    for (q, v) in table.values.iter().take(3) {
        println!("  f({q}) = {:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    println!("homomorphism check on the window: {}", kk_homomorphism_holds(&ext, &g, &h, &support));
}
