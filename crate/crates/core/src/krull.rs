//! Krull dimension of finitely presented modules over Laurent group rings.
//!
//! The annihilator of a module is replaced by its 0th Fitting ideal, which
//! has the same radical and therefore the same quotient dimension. Modules
//! with integer coefficients are split into a torsion-free part, read over Q,
//! and torsion parts, read over F_p.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grobner::{buchberger, eliminate, ideal_dimension, laurent_contract, Dimension, MonomialOrder, PolyIdeal};
use crate::ring::{is_prime, prime_factors, Coefficients, ExponentVector, LaurentPolynomial};

/// A module over K[X_1^±, ..., X_d^±] given by generators and relations.
///
/// Row `r` of the relation matrix says Σ_j relations[r][j]·e_j = 0.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    coeffs: Coefficients,
    rank: usize,
    n_generators: usize,
    relations: Vec<Vec<LaurentPolynomial>>,
    declared_characteristic: Option<u64>,
    torsion_free: bool,
}

impl ModulePresentation {
    pub fn new(
        coeffs: Coefficients,
        rank: usize,
        n_generators: usize,
        relations: Vec<Vec<LaurentPolynomial>>,
    ) -> Result<Self> {
        if matches!(coeffs, Coefficients::IntegersMod(_)) {
            return Err(Error::UnsupportedCoefficients(format!(
                "{coeffs}: use integer coefficients with a declared characteristic"
            )));
        }
        if rank == 0 {
            return Err(Error::argument("the acting group must have rank at least 1"));
        }
        if n_generators == 0 {
            return Err(Error::argument("a presentation needs at least one generator"));
        }
        for (r, row) in relations.iter().enumerate() {
            if row.len() != n_generators {
                return Err(Error::structural(format!(
                    "relation {r} has {} entries, expected {n_generators}",
                    row.len()
                )));
            }
            for p in row {
                if p.rank() != rank || p.coeffs() != coeffs {
                    return Err(Error::structural(format!("entry {p} of relation {r} has the wrong ring")));
                }
            }
        }
        Ok(ModulePresentation {
            coeffs,
            rank,
            n_generators,
            relations,
            declared_characteristic: None,
            torsion_free: false,
        })
    }

    /// The cyclic module K[X^±]/(f_1, ..., f_r).
    pub fn cyclic(coeffs: Coefficients, rank: usize, relations: Vec<LaurentPolynomial>) -> Result<Self> {
        Self::new(coeffs, rank, 1, relations.into_iter().map(|f| vec![f]).collect())
    }

    /// The free module of the given rank.
    pub fn free(coeffs: Coefficients, rank: usize, n_generators: usize) -> Result<Self> {
        Self::new(coeffs, rank, n_generators, Vec::new())
    }

    /// Declares that k annihilates the module (integer coefficients only).
    pub fn with_characteristic(mut self, k: u64) -> Result<Self> {
        if self.coeffs != Coefficients::Integer {
            return Err(Error::argument("a characteristic can only be declared over Z"));
        }
        if k < 2 {
            return Err(Error::argument(format!("declared characteristic {k} must be at least 2")));
        }
        self.declared_characteristic = Some(k);
        self.torsion_free = false;
        Ok(self)
    }

    /// Declares that the module has no Z-torsion (integer coefficients only).
    pub fn with_torsion_free(mut self) -> Result<Self> {
        if self.coeffs != Coefficients::Integer {
            return Err(Error::argument("torsion-freeness can only be declared over Z"));
        }
        self.declared_characteristic = None;
        self.torsion_free = true;
        Ok(self)
    }

    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relations(&self) -> &[Vec<LaurentPolynomial>] {
        &self.relations
    }

    pub fn declared_characteristic(&self) -> Option<u64> {
        self.declared_characteristic
    }

    /// True when the module is known to have no Z-torsion: declared, free, or
    /// cyclic with one relation of content 1 (Gauss's lemma).
    pub fn is_torsion_free(&self) -> bool {
        if self.coeffs != Coefficients::Integer || self.declared_characteristic.is_some() {
            return false;
        }
        if self.torsion_free || self.relations.is_empty() {
            return true;
        }
        if self.n_generators == 1 && self.relations.len() == 1 {
            let f = &self.relations[0][0];
            return !f.is_zero() && content(f).is_one_abs();
        }
        false
    }

    /// Block-diagonal presentation of the direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.coeffs != other.coeffs || self.rank != other.rank {
            return Err(Error::structural("direct sum of presentations over different rings"));
        }
        let zero = LaurentPolynomial::zero(self.rank, self.coeffs);
        let n = self.n_generators + other.n_generators;
        let mut rows = Vec::new();
        for row in &self.relations {
            let mut r = row.clone();
            r.resize(n, zero.clone());
            rows.push(r);
        }
        for row in &other.relations {
            let mut r = vec![zero.clone(); self.n_generators];
            r.extend(row.iter().cloned());
            rows.push(r);
        }
        let mut out = Self::new(self.coeffs, self.rank, n, rows)?;
        out.declared_characteristic = match (self.declared_characteristic, other.declared_characteristic) {
            (Some(a), Some(b)) => Some(a.lcm(&b)),
            _ => None,
        };
        out.torsion_free = self.is_torsion_free() && other.is_torsion_free();
        Ok(out)
    }

    /// Relation rows including k·e_j for a declared characteristic k.
    fn effective_relations(&self) -> Vec<Vec<LaurentPolynomial>> {
        let mut rows = self.relations.clone();
        if let Some(k) = self.declared_characteristic {
            let zero = LaurentPolynomial::zero(self.rank, self.coeffs);
            for j in 0..self.n_generators {
                let mut row = vec![zero.clone(); self.n_generators];
                row[j] = LaurentPolynomial::constant(self.rank, k as i64, self.coeffs);
                rows.push(row);
            }
        }
        rows
    }

    /// Parses the text format.
    ///
    /// ```text
    /// ring char=Z d=1 gens=1 torsion=2
    /// # comment
    /// X - 1
    /// ```
    ///
    /// `char` is `0` (Q), a prime p (F_p) or `Z`. Over Z, `torsion=k` declares
    /// k-torsion and `torsion=0` declares the module torsion-free.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::parse("empty presentation"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("ring") {
            return Err(Error::parse("presentation must start with 'ring'"));
        }
        let mut coeffs = None;
        let mut rank = None;
        let mut gens = None;
        let mut torsion = None;
        for w in words {
            let (key, value) =
                w.split_once('=').ok_or_else(|| Error::parse(format!("malformed header field {w:?}")))?;
            let num = || value.parse::<u64>().map_err(|_| Error::parse(format!("bad value in {w:?}")));
            match key {
                "char" => {
                    coeffs = Some(match value {
                        "Z" => Coefficients::Integer,
                        "0" => Coefficients::Rational,
                        _ => Coefficients::prime_field(num()?)?,
                    })
                }
                "d" => rank = Some(num()? as usize),
                "gens" => gens = Some(num()? as usize),
                "torsion" => torsion = Some(num()?),
                _ => return Err(Error::parse(format!("unknown header field {key:?}"))),
            }
        }
        let coeffs = coeffs.ok_or_else(|| Error::parse("header lacks char="))?;
        let rank = rank.ok_or_else(|| Error::parse("header lacks d="))?;
        let gens = gens.ok_or_else(|| Error::parse("header lacks gens="))?;
        let mut rows = Vec::new();
        for line in lines {
            let row = line
                .split(',')
                .map(|p| LaurentPolynomial::parse(p, rank, coeffs))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let pres = Self::new(coeffs, rank, gens, rows)?;
        match torsion {
            None => Ok(pres),
            Some(0) => pres.with_torsion_free(),
            Some(k) => pres.with_characteristic(k),
        }
    }

    pub fn to_text(&self) -> String {
        let c = match self.coeffs {
            Coefficients::Integer => "Z".to_string(),
            other => other.characteristic().to_string(),
        };
        let mut out = format!("ring char={c} d={} gens={}", self.rank, self.n_generators);
        if let Some(k) = self.declared_characteristic {
            out.push_str(&format!(" torsion={k}"));
        } else if self.torsion_free {
            out.push_str(" torsion=0");
        }
        out.push('\n');
        for row in &self.relations {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            out.push_str(&cells.join(", "));
            out.push('\n');
        }
        out
    }
}

trait IsOneAbs {
    fn is_one_abs(&self) -> bool;
}

impl IsOneAbs for BigRational {
    fn is_one_abs(&self) -> bool {
        self.abs() == BigRational::from_integer(1.into())
    }
}

/// gcd of the integer coefficients.
fn content(f: &LaurentPolynomial) -> BigRational {
    let g = f
        .terms()
        .fold(num_bigint::BigInt::zero(), |acc, (_, c)| acc.gcd(&c.to_integer()));
    BigRational::from_integer(g)
}

fn determinant(m: &[Vec<LaurentPolynomial>], rank: usize, coeffs: Coefficients) -> LaurentPolynomial {
    let n = m.len();
    match n {
        0 => LaurentPolynomial::one(rank, coeffs),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = LaurentPolynomial::zero(rank, coeffs);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPolynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][col] * &determinant(&minor, rank, coeffs);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All maximal minors of the relation matrix; empty (the zero ideal) when
/// there are fewer relations than generators.
pub fn fitting_ideal0(pres: &ModulePresentation) -> Vec<LaurentPolynomial> {
    let rows = pres.effective_relations();
    let n = pres.n_generators;
    let mut out: Vec<LaurentPolynomial> = Vec::new();
    for choice in combinations(rows.len(), n) {
        let sub: Vec<Vec<LaurentPolynomial>> = choice.iter().map(|&r| rows[r].clone()).collect();
        let det = determinant(&sub, pres.rank, pres.coeffs);
        if !det.is_zero() && !out.contains(&det) {
            out.push(det);
        }
    }
    out
}

/// Dimension of K[X^±]/I for Laurent generators over a field.
pub fn laurent_quotient_dimension(gens: &[LaurentPolynomial], rank: usize, coeffs: Coefficients) -> Result<Dimension> {
    let ideal = laurent_contract(gens, rank, coeffs)?;
    Ok(ideal_dimension(&buchberger(&ideal)?))
}

fn fitting_over(pres: &ModulePresentation, coeffs: Coefficients) -> Vec<LaurentPolynomial> {
    fitting_ideal0(pres)
        .iter()
        .map(|f| f.change_coefficients(coeffs))
        .filter(|f| !f.is_zero())
        .collect()
}

/// Krull dimension of a module over Q or F_p coefficients.
pub fn module_krull_dim(pres: &ModulePresentation) -> Result<Dimension> {
    if !pres.coeffs.is_field() {
        return Err(Error::UnsupportedCoefficients(format!(
            "{}: use torsion_split_dims for integer coefficients",
            pres.coeffs
        )));
    }
    laurent_quotient_dimension(&fitting_ideal0(pres), pres.rank, pres.coeffs)
}

/// Group dimension from the dimension of its abelian kernel.
pub fn group_krull_from_module(module: Dimension, group_is_infinite: bool) -> usize {
    match module {
        Dimension::Finite(k) if k > 0 => k,
        _ => usize::from(group_is_infinite),
    }
}

/// Krull dimension of a metabelian group whose derived module is `pres`.
pub fn group_krull_dim(pres: &ModulePresentation, group_is_infinite: bool) -> Result<usize> {
    let module = if pres.coeffs.is_field() {
        module_krull_dim(pres)?
    } else {
        torsion_split_dims(pres, &[])?.krull_module
    };
    Ok(group_krull_from_module(module, group_is_infinite))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct KrullReport {
    pub krull_module: Dimension,
    pub krull_group: usize,
    /// `None` when not computed.
    pub krull0: Option<Dimension>,
    pub krullt: Option<Dimension>,
    pub per_prime: BTreeMap<u64, Dimension>,
    pub status: ReportStatus,
}

impl KrullReport {
    fn assemble(
        krull0: Option<Dimension>,
        krullt: Option<Dimension>,
        per_prime: BTreeMap<u64, Dimension>,
        status: ReportStatus,
    ) -> Self {
        let krull_module = krull0.into_iter().chain(krullt).max().unwrap_or(Dimension::Empty);
        KrullReport {
            krull_module,
            // The acting Z^d has d ≥ 1, so the group is infinite.
            krull_group: group_krull_from_module(krull_module, true),
            krull0,
            krullt,
            per_prime,
            status,
        }
    }
}

fn render(d: &Option<Dimension>) -> String {
    d.map(|d| d.to_string()).unwrap_or_else(|| "not computed".into())
}

impl fmt::Display for KrullReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "krull_module={} krull_group={} krull0={} krullt={} status={:?}",
            self.krull_module,
            self.krull_group,
            render(&self.krull0),
            render(&self.krullt),
            self.status
        )
    }
}

/// Full report for any presentation.
///
/// Over Q only the module dimension is meaningful. Over F_p the module is
/// pure torsion. Over Z the work is done by [`torsion_split_dims`].
pub fn krull_report(pres: &ModulePresentation, primes: &[u64]) -> Result<KrullReport> {
    match pres.coeffs {
        Coefficients::Integer => torsion_split_dims(pres, primes),
        Coefficients::PrimeField(p) => {
            let d = module_krull_dim(pres)?;
            let per_prime = BTreeMap::from([(p, d)]);
            Ok(KrullReport::assemble(Some(Dimension::Empty), Some(d), per_prime, ReportStatus::Exact))
        }
        Coefficients::Rational => {
            let d = module_krull_dim(pres)?;
            let mut r = KrullReport::assemble(None, None, BTreeMap::new(), ReportStatus::Exact);
            r.krull_module = d;
            r.krull_group = group_krull_from_module(d, true);
            Ok(r)
        }
        Coefficients::IntegersMod(_) => Err(Error::UnsupportedCoefficients(pres.coeffs.to_string())),
    }
}

/// Splits an integer presentation into its rational and mod-p readings.
///
/// krull0 is the Q-dimension plus one (or empty when M ⊗ Q = 0). With a
/// declared characteristic k the module is pure k-torsion and krullt is the
/// maximum over the primes (by default those dividing k). Without one,
/// per-prime figures only bound krullt from above.
pub fn torsion_split_dims(pres: &ModulePresentation, primes: &[u64]) -> Result<KrullReport> {
    if pres.coeffs != Coefficients::Integer {
        return Err(Error::UnsupportedCoefficients(format!("{} (expected Z)", pres.coeffs)));
    }
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    let rank = pres.rank;
    let q = laurent_quotient_dimension(&fitting_over(pres, Coefficients::Rational), rank, Coefficients::Rational)?;
    let krull0 = q.plus(1);

    let mut primes: Vec<u64> = primes.to_vec();
    if primes.is_empty() {
        if let Some(k) = pres.declared_characteristic {
            primes = prime_factors(k);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let per_prime = primes
        .iter()
        .map(|&p| {
            let f = Coefficients::PrimeField(p);
            laurent_quotient_dimension(&fitting_over(pres, f), rank, f).map(|d| (p, d))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let max_prime = per_prime.values().copied().max();

    if pres.declared_characteristic.is_some() {
        let t = max_prime.unwrap_or(Dimension::Empty);
        Ok(KrullReport::assemble(Some(krull0), Some(t), per_prime, ReportStatus::Exact))
    } else if pres.is_torsion_free() {
        Ok(KrullReport::assemble(Some(krull0), Some(Dimension::Empty), per_prime, ReportStatus::Exact))
    } else if let Some(t) = max_prime {
        Ok(KrullReport::assemble(Some(krull0), Some(t), per_prime, ReportStatus::UpperBound))
    } else {
        let mut r = KrullReport::assemble(Some(krull0), None, per_prime, ReportStatus::UpperBound);
        r.krull_module = krull0;
        r.krull_group = group_krull_from_module(krull0, true);
        Ok(r)
    }
}

/// Monomials whose images are algebraically independent modulo an ideal.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MonomialFamily {
    pub monomials: Vec<ExponentVector>,
    pub characteristic: u64,
}

/// Checks that the monomials X^{m_i} are algebraically independent in
/// K[X^±]/I.
///
/// Works in K[X, W, T] with X_i W_i = 1 and T_i = X^{m_i}; the family is
/// independent iff eliminating X and W leaves the zero ideal.
pub fn certify_transcendental(
    gens: &[LaurentPolynomial],
    rank: usize,
    coeffs: Coefficients,
    monomials: &[ExponentVector],
) -> Result<bool> {
    if !coeffs.is_field() {
        return Err(Error::UnsupportedCoefficients(coeffs.to_string()));
    }
    let j = monomials.len();
    let n = 2 * rank + j;
    // Laurent monomial X^e as X^{e+} W^{e-}.
    let embed = |e: &ExponentVector| -> ExponentVector {
        let mut v = ExponentVector::zero(n);
        for (i, &x) in e.entries().iter().enumerate() {
            if x >= 0 {
                v.0[i] = x;
            } else {
                v.0[rank + i] = -x;
            }
        }
        v
    };
    let lift = |p: &LaurentPolynomial| -> LaurentPolynomial {
        LaurentPolynomial::from_terms(n, coeffs, p.terms().map(|(e, c)| (embed(e), c.clone()))).expect("rank")
    };
    let mut ideal: Vec<LaurentPolynomial> = Vec::new();
    for g in gens {
        if g.rank() != rank {
            return Err(Error::structural(format!("generator {g} has rank {}, expected {rank}", g.rank())));
        }
        ideal.push(lift(&g.change_coefficients(coeffs)));
    }
    let one = LaurentPolynomial::one(n, coeffs);
    for i in 0..rank {
        let xw = &LaurentPolynomial::var(n, i, coeffs) * &LaurentPolynomial::var(n, rank + i, coeffs);
        ideal.push(&xw - &one);
    }
    for (k, m) in monomials.iter().enumerate() {
        if m.rank() != rank {
            return Err(Error::structural(format!("monomial {m} has the wrong rank")));
        }
        let t = LaurentPolynomial::var(n, 2 * rank + k, coeffs);
        let x = LaurentPolynomial::monomial(embed(m), coeffs.from_i64(1), coeffs);
        ideal.push(&t - &x);
    }
    let ideal = PolyIdeal::new(n, coeffs, MonomialOrder::Grevlex, ideal)?;
    let vars: Vec<usize> = (0..2 * rank).collect();
    Ok(eliminate(&ideal, &vars)?.is_zero())
}

/// Candidate exponents in search order: max-norm shells, then L1 norm, then
/// lexicographically descending.
fn candidates(rank: usize, max_norm: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for r in 1..=max_norm {
        let mut shell: Vec<ExponentVector> = Vec::new();
        let side = (2 * r + 1) as usize;
        let total = side.pow(rank as u32);
        for idx in 0..total {
            let mut k = idx;
            let mut v = ExponentVector::zero(rank);
            for i in 0..rank {
                v.0[i] = (k % side) as i64 - r;
                k /= side;
            }
            if v.max_norm() == r {
                shell.push(v);
            }
        }
        shell.sort_by(|a, b| a.l1_norm().cmp(&b.l1_norm()).then_with(|| b.cmp(a)));
        out.extend(shell);
    }
    out
}

/// Rank over Q of a family of integer vectors (fraction-free elimination).
fn lattice_rank(vs: &[ExponentVector]) -> usize {
    let mut rows: Vec<Vec<i128>> = vs.iter().map(|v| v.entries().iter().map(|&x| x as i128).collect()).collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let (a, b) = (rows[rank][col], rows[r][col]);
                let g = a.gcd(&b);
                let (fa, fb) = (b / g, a / g);
                for c in 0..ncols {
                    rows[r][c] = rows[r][c] * fb - rows[rank][c] * fa;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Largest max-norm explored by the monomial search.
pub const MONOMIAL_SEARCH_RADIUS: i64 = 3;

/// Greedy search for `target` transcendental monomials modulo a Laurent ideal.
///
/// Fails with [`Error::DimensionDeficit`] when the quotient is too small,
/// reporting the family reached.
pub fn find_transcendental_monomials(
    gens: &[LaurentPolynomial],
    rank: usize,
    coeffs: Coefficients,
    target: usize,
) -> Result<MonomialFamily> {
    let dim = laurent_quotient_dimension(gens, rank, coeffs)?;
    let reachable = dim.value().unwrap_or(0).min(target);
    let mut family = MonomialFamily { monomials: Vec::new(), characteristic: coeffs.characteristic() };
    if reachable > 0 {
        for m in candidates(rank, MONOMIAL_SEARCH_RADIUS) {
            let mut trial = family.monomials.clone();
            trial.push(m);
            if lattice_rank(&trial) < trial.len() {
                continue;
            }
            if certify_transcendental(gens, rank, coeffs, &trial)? {
                family.monomials = trial;
                if family.monomials.len() == reachable {
                    break;
                }
            }
        }
    }
    if family.monomials.len() < target {
        return Err(Error::DimensionDeficit { dimension: dim.to_string(), target, achieved: family });
    }
    Ok(family)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum WitnessKind {
    #[serde(rename = "Z_wr_Z")]
    ZWrZ,
    B2p,
    #[serde(rename = "lamplighter")]
    Lamplighter,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WitnessKind::ZWrZ => "Z_wr_Z",
            WitnessKind::B2p => "B2p",
            WitnessKind::Lamplighter => "lamplighter",
            WitnessKind::None => "none",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupWitness {
    pub kind: WitnessKind,
    pub prime: Option<u64>,
    pub monomials: MonomialFamily,
}

/// A subgroup certifying the dimension: Z≀Z when krull0 ≥ 2, B_2^(p) when
/// krullt ≥ 2, a lamplighter when krullt = 1, and nothing otherwise.
pub fn special_subgroup_witness(report: &KrullReport, pres: &ModulePresentation) -> Result<SubgroupWitness> {
    if report.status != ReportStatus::Exact {
        return Err(Error::NotExact);
    }
    let rank = pres.rank;
    let at_least = |d: Option<Dimension>, k: usize| matches!(d, Some(Dimension::Finite(v)) if v >= k);
    if at_least(report.krull0, 2) {
        let q = Coefficients::Rational;
        let family = find_transcendental_monomials(&fitting_over(pres, q), rank, q, 1)?;
        return Ok(SubgroupWitness { kind: WitnessKind::ZWrZ, prime: None, monomials: family });
    }
    for (kind, need) in [(WitnessKind::B2p, 2), (WitnessKind::Lamplighter, 1)] {
        if !at_least(report.krullt, need) {
            continue;
        }
        let p = report
            .per_prime
            .iter()
            .find(|(_, d)| d.value().is_some_and(|v| v >= need))
            .map(|(p, _)| *p)
            .ok_or_else(|| Error::structural("report has krullt but no prime realizing it"))?;
        let f = Coefficients::PrimeField(p);
        let family = find_transcendental_monomials(&fitting_over(pres, f), rank, f, need)?;
        return Ok(SubgroupWitness { kind, prime: Some(p), monomials: family });
    }
    Ok(SubgroupWitness {
        kind: WitnessKind::None,
        prime: None,
        monomials: MonomialFamily { monomials: Vec::new(), characteristic: 0 },
    })
}
