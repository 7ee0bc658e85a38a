//! Command-line front end.
//!
//! Every command writes one artifact (JSON, or CSV for tables) that records
//! the tool version, the full configuration, the seed and the wall time.
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a
//! verification comes out negative.

pub mod pipeline;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::folner::{
    build_ring_couple, quotient_descent, ring_from_presentation, verify_couple, CoupleFile, Projection, SizeBound,
    VerifyOptions,
};
use crate::grobner::{buchberger, ideal_dimension, MonomialOrder, PolyIdeal};
use crate::groups::{verify_relations, GroupSpec, Relation};
use crate::krull::{
    find_transcendental_monomials, fitting_ideal0, krull_report, laurent_quotient_dimension, special_subgroup_witness,
    ModulePresentation,
};
use crate::ring::{Coefficients, LaurentPolynomial};
use crate::walk::{
    exact_return_probabilities, fit_exponent, monte_carlo_return, Arithmetic, FitModel, FitOptions, McOptions,
    StudyConfig, WalkEstimate,
};
use pipeline::{pipeline_theorem_a, DEFAULT_MARGIN, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "metabelian", version, about = "Krull dimension, metabelian groups and return probabilities")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Cap on stored elements (exact walks, couple exploration, enumeration).
    #[arg(long, global = true, default_value_t = 4_000_000)]
    pub budget_elements: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Krull dimensions of a module presentation file.
    KrullDim {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Algebraically independent monomials modulo the Fitting ideal.
    FindTranscendental {
        file: PathBuf,
        #[arg(long)]
        target: usize,
        /// Work over F_p instead of the presentation's own field (or Q for Z).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Special subgroup certifying the dimension.
    Witness {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Dimension of K[x_1..x_d]/I (or of the Laurent quotient with --laurent).
    IdealDim {
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        laurent: bool,
        polys: Vec<String>,
    },
    /// Exact return probabilities up to nmax steps (epsilon 0: rationals).
    ExactReturn {
        #[arg(long)]
        group: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
    },
    /// Monte Carlo return frequencies.
    Simulate {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long)]
        samples: u64,
    },
    /// Fits a decay model to a CSV of return probabilities.
    Fit {
        #[arg(long, default_value = "stretched_exp")]
        model: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 64.0)]
        min_n: f64,
        #[arg(long, default_value_t = 200)]
        bootstrap: usize,
    },
    /// Builds the ring couple for a cyclic F_p presentation.
    FolnerBuild {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Exhaustively verifies a couple file.
    FolnerVerify {
        #[arg(long)]
        couple: PathBuf,
        /// Required #Ω'/#Ω, as a decimal or a fraction p/q.
        #[arg(long, default_value = "0")]
        c0: String,
        /// Size function of m, for example "C*exp(C*m^k)".
        #[arg(long = "V")]
        size_function: Option<String>,
        /// Constants of the size function, NAME=VALUE.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Pushes a couple to a quotient.
    FolnerDescend {
        #[arg(long)]
        couple: PathBuf,
        #[arg(long, default_value = "cursor")]
        projection: String,
        /// Boundary radius; defaults to the couple's m.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Checks group laws on random words.
    VerifyRelations {
        #[arg(long)]
        group: String,
        /// Relation words such as "[[w1,w2],[w3,w4]]"; defaults to the laws of the family.
        #[arg(long = "relation")]
        relations: Vec<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Krull dimension against the fitted decay exponent.
    TheoremA {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 512)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-10)]
        epsilon: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1024usize, 2048, 4096])]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        #[arg(long, default_value = "stretched_exp")]
        model: String,
        #[arg(long, default_value_t = 64)]
        min_n: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
    },
}

/// Result of one command before rendering.
struct Outcome {
    result: Value,
    /// Rows for CSV output: header, then records.
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    negative: bool,
    /// Budget exhaustion that left the answer undecided.
    undecided: Option<String>,
    /// Printed to stderr without changing the exit status.
    warning: Option<String>,
}

impl Outcome {
    fn json(result: impl Serialize) -> Result<Self> {
        Ok(Outcome { result: serde_json::to_value(result)?, table: None, negative: false, undecided: None, warning: None })
    }
}

fn read_presentation(path: &Path) -> Result<ModulePresentation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::argument(format!("{}: {e}", path.display())))?;
    ModulePresentation::parse(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

fn read_couple(path: &Path, budget: usize) -> Result<crate::folner::FolnerCouple> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::argument(format!("{}: {e}", path.display())))?;
    let file: CoupleFile = serde_json::from_str(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
    file.to_couple(budget)
}

fn parse_fraction(s: &str) -> Result<BigRational> {
    let bad = || Error::parse(format!("bad ratio {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(BigRational::new(a.into(), b.into()));
    }
    // Decimals are read exactly: "0.6" is 6/10, not the nearest double.
    let t = s.trim();
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.starts_with(['+', '-']) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(digits, num_bigint::BigInt::from(10u32).pow(frac.len() as u32)))
}

fn estimate_rows(est: &[WalkEstimate], monte_carlo: bool) -> (Vec<&'static str>, Vec<Vec<String>>) {
    if monte_carlo {
        let rows = est.iter().map(|e| vec![e.n.to_string(), e.p.to_string(), e.stderr.unwrap_or(0.0).to_string()]).collect();
        (vec!["n", "p", "stderr"], rows)
    } else {
        let rows = est
            .iter()
            .map(|e| {
                let mut r = vec![e.n.to_string(), e.p_lower.to_string(), e.p_upper.to_string()];
                if let Some(x) = &e.exact_value {
                    r.push(x.to_string());
                }
                r
            })
            .collect();
        let exact = est.first().is_some_and(|e| e.exact_value.is_some());
        (if exact { vec!["n", "p_lower", "p_upper", "exact"] } else { vec!["n", "p_lower", "p_upper"] }, rows)
    }
}

/// Reads (n, p) pairs from CSV with a header `n,p,...` or `n,p_lower,p_upper`;
/// bracket columns are reduced to their midpoint. Lines starting with '#' are
/// ignored.
pub fn read_points_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::parse(format!("CSV header: {e}")))?.clone();
    let col = |name: &str| header.iter().position(|h| h == name);
    let n_col = col("n").ok_or_else(|| Error::parse("CSV header lacks column n"))?;
    let cols: Vec<usize> = match (col("p"), col("p_lower"), col("p_upper")) {
        (Some(p), _, _) => vec![p],
        (None, Some(lo), Some(hi)) => vec![lo, hi],
        _ => return Err(Error::parse("CSV header needs p or p_lower,p_upper")),
    };
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::parse(format!("CSV: {e}")))?;
        let cell = |i: usize| -> Result<f64> {
            let raw = record.get(i).unwrap_or("");
            raw.parse().map_err(|_| Error::parse(format!("CSV line {}: bad number {raw:?}", record.position().map_or(0, |p| p.line()))))
        };
        let p = cols.iter().map(|&i| cell(i)).sum::<Result<f64>>()? / cols.len() as f64;
        out.push((cell(n_col)?, p));
    }
    Ok(out)
}

fn default_relations(spec: &GroupSpec) -> Vec<Relation> {
    let mut rels = vec![Relation::metabelian_law()];
    if let GroupSpec::Magnus { coeffs, .. } = spec {
        let k = coeffs.characteristic();
        if k > 0 {
            rels.push(Relation::commutator_power(k as u32));
        }
    }
    rels
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::KrullDim { file, primes } => Outcome::json(krull_report(&read_presentation(file)?, primes)?),
        Command::FindTranscendental { file, target, prime } => {
            let pres = read_presentation(file)?;
            let coeffs = match (prime, pres.coeffs()) {
                (Some(p), _) => Coefficients::prime_field(*p)?,
                (None, Coefficients::Integer) => Coefficients::Rational,
                (None, c) => c,
            };
            let gens: Vec<LaurentPolynomial> = fitting_ideal0(&pres)
                .iter()
                .map(|f| f.change_coefficients(coeffs))
                .filter(|f| !f.is_zero())
                .collect();
            match find_transcendental_monomials(&gens, pres.rank(), coeffs, *target) {
                Ok(family) => Outcome::json(family),
                Err(Error::DimensionDeficit { dimension, target, achieved }) => {
                    let mut o = Outcome::json(json!({ "dimension": dimension, "target": target, "achieved": achieved }))?;
                    o.negative = true;
                    Ok(o)
                }
                Err(e) => Err(e),
            }
        }
        Command::Witness { file, primes } => {
            let pres = read_presentation(file)?;
            let report = krull_report(&pres, primes)?;
            let w = special_subgroup_witness(&report, &pres)?;
            Outcome::json(json!({ "report": report, "witness": w }))
        }
        Command::IdealDim { characteristic, vars, order, laurent, polys } => {
            let coeffs = if *characteristic == 0 { Coefficients::Rational } else { Coefficients::prime_field(*characteristic)? };
            let gens = polys.iter().map(|p| LaurentPolynomial::parse(p, *vars, coeffs)).collect::<Result<Vec<_>>>()?;
            if *laurent {
                let dim = laurent_quotient_dimension(&gens, *vars, coeffs)?;
                return Outcome::json(json!({ "dimension": dim, "laurent": true }));
            }
            let order = match order.as_str() {
                "grevlex" => MonomialOrder::Grevlex,
                "lex" => MonomialOrder::Lex,
                other => return Err(Error::parse(format!("unknown monomial order {other:?}"))),
            };
            let gb = buchberger(&PolyIdeal::new(*vars, coeffs, order.clone(), gens)?)?;
            let basis: Vec<String> = gb.basis().iter().map(|f| f.to_string()).collect();
            Outcome::json(json!({ "dimension": ideal_dimension(&gb), "basis": basis, "order": order }))
        }
        Command::ExactReturn { group, nmax, epsilon } => {
            let spec = GroupSpec::parse(group)?;
            if !(*epsilon >= 0.0) {
                return Err(Error::argument("epsilon must be nonnegative"));
            }
            let arithmetic = if *epsilon == 0.0 { Arithmetic::Rational } else { Arithmetic::Float { epsilon: *epsilon } };
            let walk = exact_return_probabilities(&spec, *nmax, arithmetic, cli.budget_elements)?;
            let table = estimate_rows(&walk.estimates, false);
            let mut o = Outcome::json(&walk)?;
            o.table = Some(table);
            // The rows computed before the budget ran out keep valid bounds.
            o.warning = walk
                .truncation
                .as_ref()
                .map(|t| format!("element budget {} reached at step {}; later rows omitted", t.budget, t.step));
            Ok(o)
        }
        Command::Simulate { group, ns, samples } => {
            let spec = GroupSpec::parse(group)?;
            let est = monte_carlo_return(&spec, ns, &McOptions { samples: *samples, seed: cli.seed, threads: cli.threads })?;
            let table = estimate_rows(&est, true);
            let mut o = Outcome::json(json!({ "group": spec.to_string(), "estimates": est }))?;
            o.table = Some(table);
            Ok(o)
        }
        Command::Fit { model, input, min_n, bootstrap } => {
            let model = FitModel::parse(model)?;
            let text = std::fs::read_to_string(input).map_err(|e| Error::argument(format!("{}: {e}", input.display())))?;
            let data = read_points_csv(&text)?;
            let opts = FitOptions { min_n: *min_n, bootstrap: *bootstrap, seed: cli.seed };
            Outcome::json(fit_exponent(&data, model, &opts)?)
        }
        Command::FolnerBuild { ring, m } => {
            let q = ring_from_presentation(&read_presentation(ring)?)?;
            let couple = build_ring_couple(&q, *m, cli.budget_elements)?;
            Outcome::json(CoupleFile::from_couple(&couple)?)
        }
        Command::FolnerVerify { couple, c0, size_function, params } => {
            let couple = read_couple(couple, cli.budget_elements)?;
            let c0 = parse_fraction(c0)?;
            let bound = match size_function {
                Some(expr) => Some(SizeBound::parse(expr, &SizeBound::parse_params(params)?)?),
                None => None,
            };
            let opts = VerifyOptions { budget: cli.budget_elements, threads: cli.threads, ..Default::default() };
            let report = verify_couple(&couple, &c0, bound.as_ref(), &opts)?;
            let mut o = Outcome::json(&report)?;
            o.undecided = report.indeterminate.clone();
            o.negative = !report.passed();
            Ok(o)
        }
        Command::FolnerDescend { couple, projection, n } => {
            let c = read_couple(couple, cli.budget_elements)?;
            let projection = Projection::parse(projection)?;
            let d = quotient_descent(&c, projection, n.unwrap_or(c.m), cli.budget_elements)?;
            Outcome::json(json!({
                "projection": projection,
                "threshold": d.threshold.to_string(),
                "ratio": d.ratio,
                "implied_c0": d.implied_c0(),
                "candidates": d.candidates,
                "couple": CoupleFile::from_couple(&d.couple)?,
            }))
        }
        Command::VerifyRelations { group, relations, trials } => {
            let spec = GroupSpec::parse(group)?;
            let rels = if relations.is_empty() {
                default_relations(&spec)
            } else {
                relations.iter().map(|r| Relation::parse(r)).collect::<Result<Vec<_>>>()?
            };
            let report = verify_relations(&spec, &rels, *trials, cli.seed)?;
            let mut o = Outcome::json(&report)?;
            o.negative = !report.all_pass();
            Ok(o)
        }
        Command::TheoremA { group, nmax, epsilon, ns, samples, model, min_n, tol, margin } => {
            let spec = GroupSpec::parse(group)?;
            let cfg = StudyConfig {
                exact_nmax: *nmax,
                epsilon: *epsilon,
                budget_elements: cli.budget_elements,
                mc_ns: ns.clone(),
                samples: *samples,
                seed: cli.seed,
                threads: cli.threads,
                model: FitModel::parse(model)?,
                min_n: *min_n,
                ..StudyConfig::default()
            };
            let v = pipeline_theorem_a(&spec, &cfg, *tol, *margin)?;
            let rows = v
                .study
                .points
                .iter()
                .map(|p| {
                    let e = &p.estimate;
                    vec![e.n.to_string(), e.p.to_string(), e.p_lower.to_string(), e.p_upper.to_string(), p.used.to_string()]
                })
                .collect();
            let mut o = Outcome::json(&v)?;
            o.table = Some((vec!["n", "p", "p_lower", "p_upper", "used"], rows));
            o.negative = !v.consistent;
            Ok(o)
        }
    }
}

fn command_name(c: &Command) -> String {
    serde_json::to_value(c).ok().and_then(|v| v.get("name").and_then(Value::as_str).map(String::from)).unwrap_or_default()
}

fn render(cli: &Cli, outcome: &Outcome, wall: f64) -> Result<String> {
    let config = serde_json::to_value(cli)?;
    match cli.format {
        Format::Json => {
            let artifact = json!({
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "command": command_name(&cli.command),
                "config": config,
                "seed": cli.seed,
                "wall_time_s": wall,
                "result": outcome.result,
            });
            Ok(serde_json::to_string_pretty(&artifact)? + "\n")
        }
        Format::Csv => {
            let (header, rows) = outcome
                .table
                .as_ref()
                .ok_or_else(|| Error::argument(format!("{} has no CSV form; use --format json", command_name(&cli.command))))?;
            let s = format!(
                "# tool={} version={}\n# config={}\n# seed={}\n# wall_time_s={wall}\n",
                env!("CARGO_PKG_NAME"),
                env!("CARGO_PKG_VERSION"),
                serde_json::to_string(&config)?,
                cli.seed
            );
            let mut w = csv::Writer::from_writer(s.into_bytes());
            let table = std::iter::once(header.iter().map(|h| h.to_string()).collect::<Vec<_>>()).chain(rows.iter().cloned());
            for r in table {
                w.write_record(&r).map_err(|e| Error::argument(format!("CSV: {e}")))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::argument(format!("CSV: {e}")))?;
            Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
        }
    }
}

fn check_config(cli: &Cli) -> Result<()> {
    if cli.threads == 0 {
        return Err(Error::argument("--threads must be at least 1"));
    }
    if cli.budget_elements == 0 {
        return Err(Error::argument("--budget-elements must be positive"));
    }
    Ok(())
}

/// Runs one command line and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let start = Instant::now();
    let outcome = check_config(&cli).and_then(|_| execute(&cli));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let text = match render(&cli, &outcome, start.elapsed().as_secs_f64()) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INPUT;
    }
    if let Some(w) = &outcome.warning {
        let _ = writeln!(stderr, "warning: {w}");
    }
    if let Some(why) = &outcome.undecided {
        let _ = writeln!(stderr, "error: budget exhausted: {why}");
        return EXIT_INPUT;
    }
    if outcome.negative {
        let _ = writeln!(stderr, "verification failed");
        return EXIT_NEGATIVE;
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("metabelian").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exact_return_on_the_line() {
        let (code, out, _) = run_str(&["exact-return", "--group", "zd:1", "--nmax", "6", "--epsilon", "0", "--format", "csv"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows[0], "n,p_lower,p_upper,exact");
        for want in ["2,0.5,0.5,1/2", "4,0.375,0.375,3/8", "6,0.3125,0.3125,5/16"] {
            assert!(rows.contains(&want), "{rows:?}");
        }
    }

    #[test]
    fn input_errors_exit_with_one() {
        assert_eq!(run_str(&["simulate", "--group", "lamplighter:p=2,d=1", "--ns", "2", "--samples", "0"]).0, 1);
        assert_eq!(run_str(&["simulate", "--group", "nonsense", "--ns", "2", "--samples", "5"]).0, 1);
        assert_eq!(run_str(&["krull-dim", "/nonexistent.mod"]).0, 1);
        assert_eq!(run_str(&["no-such-command"]).0, 1);
        assert_eq!(run_str(&["fit", "--input", "/nonexistent.csv", "--format", "csv"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn artifacts_embed_the_run() {
        let (code, out, _) = run_str(&["simulate", "--group", "zd:1", "--ns", "2,4", "--samples", "1000", "--seed", "7"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["seed"], 7);
        assert_eq!(v["command"], "simulate");
        assert_eq!(v["config"]["command"]["samples"], 1000);
        assert!(v["wall_time_s"].is_f64());
        assert!(v["version"].is_string());
    }

    #[test]
    fn csv_points_parse() {
        let pts = read_points_csv("# note\nn,p_lower,p_upper\n2,0.4,0.6\n4,0.2,0.2\n").unwrap();
        assert_eq!(pts, vec![(2.0, 0.5), (4.0, 0.2)]);
        let pts = read_points_csv("n,p,stderr\n10,0.1,0.01\n").unwrap();
        assert_eq!(pts, vec![(10.0, 0.1)]);
        assert!(read_points_csv("x,y\n1,2\n").is_err());
        assert!(read_points_csv("n,p\n1\n").is_err());
    }

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("3/5").unwrap(), BigRational::new(3.into(), 5.into()));
        assert_eq!(parse_fraction("0.5").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_fraction("0.6").unwrap(), BigRational::new(3.into(), 5.into()));
        assert_eq!(parse_fraction("1").unwrap(), BigRational::new(1.into(), 1.into()));
        assert!(parse_fraction("1/0").is_err() && parse_fraction("x").is_err());
    }
}
