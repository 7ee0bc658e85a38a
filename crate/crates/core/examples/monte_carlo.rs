//! Monte Carlo return frequencies; results do not depend on the thread count.

use metabelian::groups::GroupSpec;
use metabelian::walk::{monte_carlo_return, McOptions};

fn main() -> metabelian::Result<()> {
    let g = GroupSpec::parse("lamplighter:p=2,d=2")?;
    let ns = [8, 16, 32];
    let one = monte_carlo_return(&g, &ns, &McOptions { samples: 200_000, seed: 11, threads: 1 })?;
    let four = monte_carlo_return(&g, &ns, &McOptions { samples: 200_000, seed: 11, threads: 4 })?;
    for (a, b) in one.iter().zip(&four) {
        println!("n={:>3}  p~{:.5}  [{:.5}, {:.5}]  same with 4 threads: {}", a.n, a.p, a.p_lower, a.p_upper, a.p == b.p);
    }
    Ok(())
}
