//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line.
//!
//! Lines go straight to stderr, so they show up even when output is captured.
//! Criterion 5 runs the full-size return-probability protocol and takes tens
//! of minutes on a single core.

use std::io::Write;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use metabelian::cli::pipeline::derived_module;
use metabelian::folner::{
    build_ring_couple, fit_growth, noether_size_count, quotient_descent, verify_couple, Projection, VerifyOptions,
};
use metabelian::groups::{verify_relations, GroupSpec, QuotientRing, Relation};
use metabelian::krull::{
    certify_transcendental, fitting_ideal0, krull_report, special_subgroup_witness, ModulePresentation, WitnessKind,
};
use metabelian::ring::{Coefficients, ExponentVector, LaurentPolynomial};
use metabelian::walk::{
    exact_return_probabilities, fit_exponent, return_exponent_study, Arithmetic, FitModel, FitOptions, StudyConfig,
};

fn report(n: u32, ok: bool, detail: &str) {
    // Bypasses the test harness capture on purpose.
    let line = format!("criterion {n}: {} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn criterion_1_krull_dimension_table() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut check = |name: String, pres: ModulePresentation, want: usize| {
        let r = krull_report(&pres, &[]).expect("krull report");
        if r.krull_group != want || r.krull_module.value() != Some(want) {
            failures.push(format!("{name}: got {r}, want {want}"));
        }
    };
    check("lamplighter".into(), ModulePresentation::parse("ring char=2 d=1 gens=1\n").unwrap(), 1);
    for d in 1..=3 {
        for p in [2u64, 3, 5] {
            check(format!("F_{p}[Z^{d}]"), ModulePresentation::free(Coefficients::PrimeField(p), d, 1).unwrap(), d);
        }
        let free = ModulePresentation::free(Coefficients::Integer, d, 1).unwrap().with_torsion_free().unwrap();
        check(format!("Z[Z^{d}]"), free, d + 1);
    }
    for p in [2u64, 3, 5] {
        let spec = GroupSpec::p_metabelian(2, p).unwrap();
        check(format!("B_2^({p})"), derived_module(&spec).unwrap(), 2);
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && secs < 60.0;
    report(1, ok, &format!("{} mismatches, {secs:.1}s", failures.len()));
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_2_relation_suite() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for d in [2, 3] {
        let g = GroupSpec::free_metabelian(d).unwrap();
        let r = verify_relations(&g, &[Relation::metabelian_law()], 100, 2024 + d as u64).unwrap();
        if !r.all_pass() || r.checks != 100 {
            bad.push(format!("{g}: {} failures in {} checks", r.failures.len(), r.checks));
        }
    }
    for p in [2u64, 3, 5] {
        let g = GroupSpec::p_metabelian(2, p).unwrap();
        let r = verify_relations(&g, &[Relation::commutator_power(p as u32)], 100, 77 + p).unwrap();
        if !r.all_pass() || r.checks != 100 {
            bad.push(format!("{g}: {} failures in {} checks", r.failures.len(), r.checks));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 60.0;
    report(2, ok, &format!("{} violating families, {secs:.1}s", bad.len()));
    assert!(ok, "{bad:?}");
}

fn central_binomial_over_4n(n: u64) -> BigRational {
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * (2 * n - i) / (i + 1);
    }
    BigRational::new(BigInt::from(c), BigInt::from(4u32).pow(n as u32))
}

#[test]
fn criterion_3_exact_return_probabilities() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let z = exact_return_probabilities(&GroupSpec::free_abelian(1).unwrap(), 20, Arithmetic::Rational, 1 << 20).unwrap();
    for n in 0..=10u64 {
        let e = z.estimates.iter().find(|e| e.n as u64 == 2 * n).expect("row");
        if e.exact_value.as_ref() != Some(&central_binomial_over_4n(n)) {
            bad.push(format!("Z p_{}", 2 * n));
        }
    }
    let p2 = |spec: GroupSpec| {
        let w = exact_return_probabilities(&spec, 2, Arithmetic::Rational, 1 << 20).unwrap();
        w.estimates[1].exact_value.clone().expect("rational")
    };
    if p2(GroupSpec::free_abelian(2).unwrap()) != ratio(1, 4) {
        bad.push("Z^2 p_2".into());
    }
    let lamp = GroupSpec::lamplighter(2, 1).unwrap();
    if p2(lamp.clone()) != ratio(1, 3) {
        bad.push("lamplighter p_2".into());
    }
    let exact = exact_return_probabilities(&lamp, 8, Arithmetic::Rational, 1 << 20).unwrap();
    let trunc = exact_return_probabilities(&lamp, 8, Arithmetic::Float { epsilon: 1e-12 }, 1 << 20).unwrap();
    for (e, t) in exact.estimates.iter().zip(&trunc.estimates) {
        let v = e.exact_value.as_ref().unwrap().to_f64().unwrap();
        if !(t.p_lower <= v && v <= t.p_upper) {
            bad.push(format!("bracket at n={}: {v} not in [{}, {}]", e.n, t.p_lower, t.p_upper));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 60.0;
    report(3, ok, &format!("{} mismatches, {secs:.1}s", bad.len()));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_4_exponent_fit_sanity() {
    let start = Instant::now();
    let ns: Vec<f64> = (1..=60).map(|i| 8.0 * i as f64).collect();
    let opts = FitOptions { min_n: 0.0, bootstrap: 0, seed: 0 };
    let mut worst: f64 = 0.0;
    for alpha in [1.0 / 3.0, 0.5, 0.6] {
        let data: Vec<(f64, f64)> = ns.iter().map(|&n| (n, 0.8 * (-0.9 * n.powf(alpha)).exp())).collect();
        let fit = fit_exponent(&data, FitModel::parse("stretched_exp").unwrap(), &opts).unwrap();
        worst = worst.max((fit.alpha - alpha).abs());
    }
    let beta = 1.5;
    let data: Vec<(f64, f64)> = ns.iter().map(|&n| (n, 3.0 * n.powf(-beta))).collect();
    let fit = fit_exponent(&data, FitModel::parse("power_law").unwrap(), &opts).unwrap();
    worst = worst.max((fit.alpha - beta).abs());
    let secs = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-6 && secs < 60.0;
    report(4, ok, &format!("max exponent error {worst:.2e}, {secs:.1}s"));
    assert!(ok);
}

/// Full-size protocol. A miss is reported, not asserted: see the README.
#[test]
fn criterion_5_return_exponent_dichotomy() {
    let start = Instant::now();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = StudyConfig { threads, ..StudyConfig::default() };
    let mut alphas = Vec::new();
    let mut notes = Vec::new();
    for (d, lo, hi) in [(1usize, 0.25, 0.45), (2, 0.40, 0.60)] {
        let spec = GroupSpec::lamplighter(2, d).unwrap();
        let study = return_exponent_study(&spec, &cfg).unwrap();
        let used = study.points.iter().filter(|p| p.used).count();
        match &study.fit {
            Some(f) => {
                notes.push(format!("d={d}: alpha {:.3} from {used} points", f.alpha));
                alphas.push(Some((f.alpha, lo <= f.alpha && f.alpha <= hi)));
            }
            None => {
                notes.push(format!("d={d}: no fit ({})", study.fit_error.clone().unwrap_or_default()));
                alphas.push(None);
            }
        }
    }
    let ok = match (alphas[0], alphas[1]) {
        (Some((a1, in1)), Some((a2, in2))) => in1 && in2 && a1 < a2,
        _ => false,
    };
    let secs = start.elapsed().as_secs_f64();
    report(5, ok, &format!("{}; {threads} threads, {secs:.0}s", notes.join("; ")));
}

#[test]
fn criterion_6_folner_couples() {
    let start = Instant::now();
    let f2 = Coefficients::PrimeField(2);
    let lamp = QuotientRing::new(f2, 1, vec![]).unwrap();
    let mut bad = Vec::new();
    for m in 0..=5u64 {
        let couple = build_ring_couple(&lamp, m as usize, 1_000_000).unwrap();
        let r = verify_couple(&couple, &ratio(2 * m + 1, 4 * m + 1), None, &VerifyOptions::default()).unwrap();
        if !r.passed() {
            bad.push(format!("couple m={m}"));
        }
    }
    let ms: Vec<usize> = (1..=8).collect();
    let mut k_hats = Vec::new();
    for (rels, lo, hi) in [(vec!["X2 - X1^2"], 0.7, 1.3), (vec![], 1.7, 2.3)] {
        let rels = rels.iter().map(|s| LaurentPolynomial::parse(s, 2, f2).unwrap()).collect();
        let ring = QuotientRing::new(f2, 2, rels).unwrap();
        let sizes: Vec<BigUint> = ms.iter().map(|&m| noether_size_count(&ring, m, 100_000).unwrap()).collect();
        let k = fit_growth(&sizes, &ms).unwrap().k_hat;
        if !(lo..=hi).contains(&k) {
            bad.push(format!("k_hat {k:.3} outside [{lo}, {hi}]"));
        }
        k_hats.push(format!("{k:.3}"));
    }
    for m in 1..=3usize {
        let couple = build_ring_couple(&lamp, m, 1_000_000).unwrap();
        let d = quotient_descent(&couple, Projection::Cursor, m, 1_000_000).unwrap();
        let chosen = d.candidates.iter().find(|c| c.threshold == d.threshold.to_string()).expect("chosen threshold");
        let level = chosen.level_size as u64;
        let c0 = ratio(level, level + chosen.boundary_size as u64);
        let r = verify_couple(&d.couple, &c0, None, &VerifyOptions::default()).unwrap();
        // The cursor image of the translation boxes of Ω and Ω'.
        let sizes_ok = r.size == BigUint::from(4 * m + 1) && r.size_prime == BigUint::from(2 * m + 1);
        if !r.passed() || !sizes_ok {
            bad.push(format!("descent m={m}: {} / {}", r.size, r.size_prime));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 300.0;
    report(6, ok, &format!("k_hat {}; {} problems, {secs:.1}s", k_hats.join(" / "), bad.len()));
    assert!(ok, "{bad:?}");
}

/// Rank of integer vectors over Q, by fraction-free elimination.
fn rank_of(vectors: &[ExponentVector]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors.iter().map(|v| v.entries().iter().map(|&x| x as i128).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            let (a, b) = (rows[rank][c], rows[i][c]);
            for j in 0..cols {
                rows[i][j] = rows[i][j] * a - rows[rank][j] * b;
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn criterion_7_special_subgroups() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let cases = [
        ("ring char=Z d=2 gens=1 torsion=2\n", WitnessKind::B2p, 2),
        ("ring char=Z d=2 gens=1 torsion=3\n", WitnessKind::B2p, 2),
        ("ring char=Z d=1 gens=1\n", WitnessKind::ZWrZ, 1),
        ("ring char=Z d=1 gens=1\n1\n", WitnessKind::None, 0),
        ("ring char=Z d=3 gens=1\n1\n", WitnessKind::None, 0),
    ];
    for (text, kind, count) in cases {
        let pres = ModulePresentation::parse(text).unwrap();
        let w = special_subgroup_witness(&krull_report(&pres, &[]).unwrap(), &pres).unwrap();
        let fam = &w.monomials.monomials;
        if w.kind != kind || fam.len() != count {
            bad.push(format!("{text:?}: {:?} with {} monomials", w.kind, fam.len()));
            continue;
        }
        if fam.is_empty() {
            continue;
        }
        // Re-run the certificate from a freshly computed Fitting ideal.
        let field = match w.monomials.characteristic {
            0 => Coefficients::Rational,
            p => Coefficients::PrimeField(p),
        };
        let gens: Vec<LaurentPolynomial> =
            fitting_ideal0(&pres).iter().map(|f| f.change_coefficients(field)).filter(|f| !f.is_zero()).collect();
        if !certify_transcendental(&gens, pres.rank(), field, fam).unwrap() {
            bad.push(format!("{text:?}: certificate rejected"));
        }
        // Independence of exponent vectors is necessary, and sufficient here since the ideal is zero.
        if rank_of(fam) != fam.len() {
            bad.push(format!("{text:?}: dependent exponents"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 60.0;
    report(7, ok, &format!("{} problems, {secs:.1}s", bad.len()));
    assert!(ok, "{bad:?}");
}

fn simulate_estimates(group: &str, ns: &str, samples: &str, seed: &str, threads: &str) -> serde_json::Value {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["metabelian", "simulate", "--group", group, "--ns", ns, "--samples", samples, "--seed", seed, "--threads", threads];
    let code = metabelian::cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    v["result"]["estimates"].clone()
}

#[test]
fn criterion_8_thread_count_reproducibility() {
    let configs = [
        ("lamplighter:p=2,d=1", "16,64", "150000", "1"),
        ("free-metabelian:d=2", "8,20", "140000", "99"),
        ("zd:3", "10,30,50", "200001", "12345"),
    ];
    let mut same = 0;
    for (g, ns, samples, seed) in configs {
        let a = simulate_estimates(g, ns, samples, seed, "1");
        let b = simulate_estimates(g, ns, samples, seed, "4");
        let c = simulate_estimates(g, ns, samples, seed, "3");
        if a == b && b == c {
            same += 1;
        }
    }
    let ok = same == configs.len();
    report(8, ok, &format!("{same}/{} configurations identical across 1, 3 and 4 threads", configs.len()));
    assert!(ok);
}
