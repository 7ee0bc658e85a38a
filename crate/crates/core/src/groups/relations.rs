use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GroupElement, GroupSpec};
use crate::error::{Error, Result};

/// A word with variables, to be instantiated by random group words.
#[derive(Clone, Debug, PartialEq)]
pub enum Word {
    /// Variable w_i (0-based).
    Var(usize),
    /// Signed 1-based basic generator.
    Gen(i64),
    Inv(Box<Word>),
    Mul(Vec<Word>),
    /// [a, b] = a b a^{-1} b^{-1}.
    Comm(Box<Word>, Box<Word>),
    Pow(Box<Word>, u32),
}

impl Word {
    pub fn comm(a: Word, b: Word) -> Word {
        Word::Comm(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Word, k: u32) -> Word {
        Word::Pow(Box::new(a), k)
    }

    fn variables(&self) -> usize {
        match self {
            Word::Var(i) => i + 1,
            Word::Gen(_) => 0,
            Word::Inv(a) | Word::Pow(a, _) => a.variables(),
            Word::Mul(ws) => ws.iter().map(Word::variables).max().unwrap_or(0),
            Word::Comm(a, b) => a.variables().max(b.variables()),
        }
    }

    fn evaluate(&self, spec: &GroupSpec, vars: &[GroupElement]) -> Result<GroupElement> {
        Ok(match self {
            Word::Var(i) => vars[*i].clone(),
            Word::Gen(g) => spec.word_evaluate(&[*g])?,
            Word::Inv(a) => spec.inverse_unchecked(&a.evaluate(spec, vars)?),
            Word::Mul(ws) => {
                let mut out = spec.identity();
                for w in ws {
                    out = spec.multiply_unchecked(&out, &w.evaluate(spec, vars)?);
                }
                out
            }
            Word::Comm(a, b) => {
                let x = a.evaluate(spec, vars)?;
                let y = b.evaluate(spec, vars)?;
                let xy = spec.multiply_unchecked(&x, &y);
                let xyx = spec.multiply_unchecked(&xy, &spec.inverse_unchecked(&x));
                spec.multiply_unchecked(&xyx, &spec.inverse_unchecked(&y))
            }
            Word::Pow(a, k) => {
                let x = a.evaluate(spec, vars)?;
                let mut out = spec.identity();
                for _ in 0..*k {
                    out = spec.multiply_unchecked(&out, &x);
                }
                out
            }
        })
    }

    /// Parses words such as `[[w1,w2],[w3,w4]]`, `[w1,w2]^3` or `g3^2*g1^-1`.
    pub fn parse(s: &str) -> Result<Word> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let w = parse_product(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::parse(format!("trailing input in word {s:?}")));
        }
        Ok(w)
    }
}

fn parse_product(c: &[char], pos: &mut usize) -> Result<Word> {
    let mut factors = vec![parse_power(c, pos)?];
    while *pos < c.len() && c[*pos] == '*' {
        *pos += 1;
        factors.push(parse_power(c, pos)?);
    }
    Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Word::Mul(factors) })
}

fn parse_number(c: &[char], pos: &mut usize) -> Result<i64> {
    let start = *pos;
    if *pos < c.len() && c[*pos] == '-' {
        *pos += 1;
    }
    while *pos < c.len() && c[*pos].is_ascii_digit() {
        *pos += 1;
    }
    c[start..*pos].iter().collect::<String>().parse().map_err(|_| Error::parse(format!("expected a number at {start}")))
}

fn parse_power(c: &[char], pos: &mut usize) -> Result<Word> {
    let base = parse_atom(c, pos)?;
    if *pos < c.len() && c[*pos] == '^' {
        *pos += 1;
        let k = parse_number(c, pos)?;
        let p = Word::pow(base, k.unsigned_abs() as u32);
        return Ok(if k < 0 { Word::Inv(Box::new(p)) } else { p });
    }
    Ok(base)
}

fn parse_atom(c: &[char], pos: &mut usize) -> Result<Word> {
    match c.get(*pos) {
        Some('[') => {
            *pos += 1;
            let a = parse_product(c, pos)?;
            if c.get(*pos) != Some(&',') {
                return Err(Error::parse("expected ',' in commutator"));
            }
            *pos += 1;
            let b = parse_product(c, pos)?;
            if c.get(*pos) != Some(&']') {
                return Err(Error::parse("expected ']'"));
            }
            *pos += 1;
            Ok(Word::comm(a, b))
        }
        Some('(') => {
            *pos += 1;
            let a = parse_product(c, pos)?;
            if c.get(*pos) != Some(&')') {
                return Err(Error::parse("expected ')'"));
            }
            *pos += 1;
            Ok(a)
        }
        Some('w') => {
            *pos += 1;
            let i = parse_number(c, pos)?;
            if i < 1 {
                return Err(Error::parse("variables are numbered from w1"));
            }
            Ok(Word::Var(i as usize - 1))
        }
        Some('g') => {
            *pos += 1;
            let i = parse_number(c, pos)?;
            if i == 0 {
                return Err(Error::parse("generators are numbered from g1"));
            }
            Ok(Word::Gen(i))
        }
        other => Err(Error::parse(format!("unexpected {other:?} at {pos}"))),
    }
}

/// A named relation expected to evaluate to the identity.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub word: Word,
}

impl Relation {
    pub fn new(name: impl Into<String>, word: Word) -> Self {
        Relation { name: name.into(), word }
    }

    /// [[w1, w2], [w3, w4]] = e.
    pub fn metabelian_law() -> Self {
        let c = |i, j| Word::comm(Word::Var(i), Word::Var(j));
        Relation::new("metabelian", Word::comm(c(0, 1), c(2, 3)))
    }

    /// [w1, w2]^k = e.
    pub fn commutator_power(k: u32) -> Self {
        Relation::new(format!("commutator^{k}"), Word::pow(Word::comm(Word::Var(0), Word::Var(1)), k))
    }

    /// g_i^k = e.
    pub fn generator_power(i: i64, k: u32) -> Self {
        Relation::new(format!("g{i}^{k}"), Word::pow(Word::Gen(i), k))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Relation::new(s, Word::parse(s)?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub trial: usize,
    /// The words substituted for w1, w2, ...
    pub instantiation: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub group: String,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Longest random word substituted for a variable.
pub const MAX_RANDOM_WORD: usize = 8;

/// Evaluates each relation on `trials` random instantiations of its
/// variables by words of length 1..=8 in the basic generators.
pub fn verify_relations(spec: &GroupSpec, relations: &[Relation], trials: usize, seed: u64) -> Result<RelationReport> {
    let ngens = spec.basic_generators().len() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = spec.identity();
    let mut failures = Vec::new();
    let mut checks = 0;
    for rel in relations {
        let nvars = rel.word.variables();
        let runs = if nvars == 0 { 1 } else { trials };
        for trial in 0..runs {
            let words: Vec<Vec<i64>> = (0..nvars)
                .map(|_| {
                    let len = rng.gen_range(1..=MAX_RANDOM_WORD);
                    (0..len)
                        .map(|_| {
                            let g = rng.gen_range(1..=ngens);
                            if rng.gen_bool(0.5) { g } else { -g }
                        })
                        .collect()
                })
                .collect();
            let vars = words.iter().map(|w| spec.word_evaluate(w)).collect::<Result<Vec<_>>>()?;
            checks += 1;
            if rel.word.evaluate(spec, &vars)? != id {
                failures.push(RelationFailure { relation: rel.name.clone(), trial, instantiation: words });
            }
        }
    }
    Ok(RelationReport { group: spec.to_string(), trials, checks, failures })
}
