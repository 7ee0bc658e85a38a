use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use super::lattice::{DenseWalker, LatticeModel};
use super::{EstimateMode, WalkEstimate};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};

/// Samples per independently seeded chunk. Chunks, not workers, carry the
/// random streams, so results do not depend on the thread count.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

#[derive(Clone, Debug)]
pub struct McOptions {
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of the stream for chunk `chunk` of the run at step count `n`.
pub fn derive_seed(seed: u64, n: u64, chunk: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ n) ^ chunk)
}

/// Uniform choice in 0..k, two draws per 64-bit word, exact by rejection.
struct Chooser {
    k: u64,
    threshold: u32,
    buf: u64,
    left: u8,
}

impl Chooser {
    fn new(k: usize) -> Self {
        let k = k as u64;
        let threshold = ((1u64 << 32) % k) as u32;
        Chooser { k, threshold, buf: 0, left: 0 }
    }

    #[inline]
    fn next(&mut self, rng: &mut Xoshiro256PlusPlus) -> usize {
        loop {
            if self.left == 0 {
                self.buf = rng.next_u64();
                self.left = 2;
            }
            let x = self.buf as u32 as u64;
            self.buf >>= 32;
            self.left -= 1;
            let m = x * self.k;
            if (m as u32) >= self.threshold {
                return (m >> 32) as usize;
            }
        }
    }
}

trait Walker {
    fn n_gens(&self) -> usize;
    fn reset(&mut self);
    fn step(&mut self, g: usize);
    fn at_identity(&self) -> bool;
    fn walk(&mut self, n: usize, mut choose: impl FnMut() -> usize) {
        for _ in 0..n {
            let g = choose();
            self.step(g);
        }
    }
}

impl Walker for DenseWalker {
    fn n_gens(&self) -> usize {
        DenseWalker::n_gens(self)
    }
    fn reset(&mut self) {
        DenseWalker::reset(self)
    }
    #[inline]
    fn step(&mut self, g: usize) {
        DenseWalker::step(self, g)
    }
    #[inline]
    fn at_identity(&self) -> bool {
        DenseWalker::at_identity(self)
    }
    fn walk(&mut self, n: usize, choose: impl FnMut() -> usize) {
        DenseWalker::walk(self, n, choose)
    }
}

struct GenericWalker {
    spec: GroupSpec,
    gens: Vec<GroupElement>,
    id: GroupElement,
    cur: GroupElement,
}

impl Walker for GenericWalker {
    fn n_gens(&self) -> usize {
        self.gens.len()
    }
    fn reset(&mut self) {
        self.cur = self.id.clone();
    }
    fn step(&mut self, g: usize) {
        self.cur = self.spec.multiply_unchecked(&self.cur, &self.gens[g]);
    }
    fn at_identity(&self) -> bool {
        self.cur == self.id
    }
}

fn run_chunk<W: Walker>(w: &mut W, n: usize, count: u64, seed: u64) -> u64 {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut choose = Chooser::new(w.n_gens());
    let mut hits = 0;
    for _ in 0..count {
        w.reset();
        w.walk(n, || choose.next(&mut rng));
        hits += u64::from(w.at_identity());
    }
    hits
}

fn chunk_hits(spec: &GroupSpec, model: Option<&LatticeModel>, n: usize, samples: u64, seed: u64, chunk: u64) -> u64 {
    let count = CHUNK_SIZE.min(samples - chunk * CHUNK_SIZE);
    let s = derive_seed(seed, n as u64, chunk);
    if let Some(mut w) = model.and_then(|m| DenseWalker::new(m, n)) {
        return run_chunk(&mut w, n, count, s);
    }
    let id = spec.identity();
    let mut w = GenericWalker { spec: spec.clone(), gens: spec.generators(), cur: id.clone(), id };
    run_chunk(&mut w, n, count, s)
}

/// 95% Wilson score interval for `hits` successes out of `samples`.
pub(crate) fn wilson(hits: u64, samples: u64) -> (f64, f64) {
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits == samples { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Hit frequency of the identity after n steps, for each n in `ns`.
///
/// Samples are split into chunks of [`CHUNK_SIZE`]; chunk c at step count n
/// draws from a stream seeded by `derive_seed(seed, n, c)` and the hit
/// counts are summed, so the result is identical for every thread count.
pub fn monte_carlo_return(spec: &GroupSpec, ns: &[usize], opts: &McOptions) -> Result<Vec<WalkEstimate>> {
    if opts.samples == 0 {
        return Err(Error::argument("samples must be at least 1"));
    }
    if opts.threads == 0 {
        return Err(Error::argument("threads must be at least 1"));
    }
    if spec.generators().is_empty() {
        return Err(Error::argument(format!("{spec} has no generators to walk on")));
    }
    if let Some(n) = ns.iter().find(|&&n| n % 2 != 0) {
        return Err(Error::argument(format!("step count {n} must be even")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::argument(format!("thread pool: {e}")))?;
    let model = LatticeModel::from_spec(spec);
    let chunks = opts.samples.div_ceil(CHUNK_SIZE);
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let hits = if n == 0 {
            opts.samples
        } else {
            pool.install(|| {
                (0..chunks)
                    .into_par_iter()
                    .map(|c| chunk_hits(spec, model.as_ref(), n, opts.samples, opts.seed, c))
                    .sum::<u64>()
            })
        };
        let p = hits as f64 / opts.samples as f64;
        let (lo, hi) = if n == 0 { (1.0, 1.0) } else { wilson(hits, opts.samples) };
        out.push(WalkEstimate {
            n,
            p_lower: lo,
            p_upper: hi,
            p,
            stderr: Some((p * (1.0 - p) / opts.samples as f64).sqrt()),
            exact_value: None,
            hits: Some(hits),
            samples: Some(opts.samples),
            mode: EstimateMode::MonteCarlo,
        });
    }
    Ok(out)
}
