//! Exact return probabilities by convolution, in rational and truncated modes.

use metabelian::groups::GroupSpec;
use metabelian::walk::{exact_return_probabilities, Arithmetic};

fn main() -> metabelian::Result<()> {
    let lamp = GroupSpec::parse("lamplighter:p=2,d=1")?;
    let rational = exact_return_probabilities(&lamp, 10, Arithmetic::Rational, 1 << 20)?;
    let float = exact_return_probabilities(&lamp, 60, Arithmetic::Float { epsilon: 1e-12 }, 1 << 21)?;
    for e in &rational.estimates {
        println!("p_{} = {}", e.n, e.exact_value.as_ref().expect("rational mode"));
    }
    for e in float.estimates.iter().skip(25) {
        println!("p_{} in [{:.6e}, {:.6e}]", e.n, e.p_lower, e.p_upper);
    }
    println!("peak support {}", float.peak_support);
    Ok(())
}
