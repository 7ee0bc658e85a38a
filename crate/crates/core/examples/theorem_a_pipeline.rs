//! Krull dimension against the decay exponent, at a scale that runs in seconds.
//!
//! The full-size protocol is available as `metabelian theorem-a`.

use metabelian::cli::pipeline::pipeline_theorem_a;
use metabelian::groups::GroupSpec;
use metabelian::walk::StudyConfig;

fn main() -> metabelian::Result<()> {
    let cfg = StudyConfig { exact_nmax: 64, epsilon: 1e-10, mc_ns: vec![], min_n: 16, ..StudyConfig::default() };
    let spec = GroupSpec::parse("lamplighter:p=2,d=1")?;
    let v = pipeline_theorem_a(&spec, &cfg, 0.08, 0.08)?;
    println!("{}: k = {}, predicted alpha {:.3}, fitted {:.3}, consistent: {}", v.group, v.krull_group, v.predicted_alpha, v.alpha, v.consistent);
    Ok(())
}
