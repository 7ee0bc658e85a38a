use evalexpr::{ContextWithMutableVariables, HashMapContext, Node, Value};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

const FUNCTIONS: [&str; 5] = ["exp", "ln", "log", "sqrt", "pow"];

/// A size function V(m) given as an arithmetic expression in `m` and named
/// constants, such as `C*exp(C*m^k)` with C and k supplied separately.
#[derive(Clone, Debug, Serialize)]
pub struct SizeBound {
    pub expr: String,
    pub params: Vec<(String, f64)>,
    #[serde(skip)]
    tree: Node,
}

/// Prefixes bare exp/ln/log/sqrt/pow calls with the evaluator's `math::`.
fn qualify(expr: &str) -> String {
    let mut out = String::with_capacity(expr.len() + 16);
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let starts_word = i == 0 || !(chars[i - 1].is_alphanumeric() || chars[i - 1] == '_' || chars[i - 1] == ':');
        let hit = FUNCTIONS.iter().find(|f| {
            let n = f.len();
            starts_word
                && chars[i..].iter().take(n).copied().eq(f.chars())
                && chars[i + n..].iter().find(|c| !c.is_whitespace()) == Some(&'(')
        });
        match hit {
            Some(f) => {
                out.push_str("math::");
                out.push_str(f);
                i += f.len();
            }
            None => {
                out.push(chars[i]);
                i += 1;
            }
        }
    }
    out
}

impl SizeBound {
    pub fn parse(expr: &str, params: &[(String, f64)]) -> Result<Self> {
        let tree = evalexpr::build_operator_tree(&qualify(expr)).map_err(|e| Error::parse(format!("size function {expr:?}: {e}")))?;
        let b = SizeBound { expr: expr.to_string(), params: params.to_vec(), tree };
        b.eval(1.0)?;
        Ok(b)
    }

    /// Parses `NAME=VALUE` pairs.
    pub fn parse_params(items: &[String]) -> Result<Vec<(String, f64)>> {
        items
            .iter()
            .map(|s| {
                let (k, v) = s.split_once('=').ok_or_else(|| Error::parse(format!("parameter {s:?} is not NAME=VALUE")))?;
                let v: f64 = v.trim().parse().map_err(|_| Error::parse(format!("bad value in {s:?}")))?;
                Ok((k.trim().to_string(), v))
            })
            .collect()
    }

    pub fn eval(&self, m: f64) -> Result<f64> {
        let mut ctx = HashMapContext::new();
        let err = |e: evalexpr::EvalexprError| Error::argument(format!("size function {:?}: {e}", self.expr));
        ctx.set_value("m".into(), Value::Float(m)).map_err(err)?;
        for (k, v) in &self.params {
            ctx.set_value(k.clone(), Value::Float(*v)).map_err(err)?;
        }
        self.tree.eval_number_with_context(&ctx).map_err(err)
    }
}

/// size ≤ v up to a relative 1e-9, comparing logarithms for huge sizes.
pub(crate) fn within(size: &BigUint, v: f64) -> bool {
    if v.is_nan() {
        return false;
    }
    if v == f64::INFINITY {
        return true;
    }
    match size.to_f64() {
        Some(s) if s.is_finite() => s <= v * (1.0 + 1e-9),
        _ => {
            let shift = size.bits().saturating_sub(60);
            let top = (size >> shift).to_f64().expect("60 bits fit");
            top.ln() + shift as f64 * std::f64::consts::LN_2 <= v.ln() + 1e-9
        }
    }
}
