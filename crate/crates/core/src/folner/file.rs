use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{BoxRange, ElementSet, FolnerCouple};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec, QuotientRing, SemidirectElement};
use crate::krull::ModulePresentation;
use crate::ring::{ExponentVector, LaurentPolynomial};

/// JSON form of a couple.
///
/// Ring semidirect groups list their rings as cyclic presentation texts;
/// other groups are named by their group spec. Split sets record the ball
/// radius of each module part and the translation box; explicit sets list
/// elements in their serialized form (abelian and ring semidirect only).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoupleFile {
    pub group: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rings: Vec<String>,
    pub m: usize,
    pub omega: SetFile,
    pub omega_prime: SetFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetFile {
    Split {
        radii: Vec<usize>,
        #[serde(rename = "box")]
        translations: BoxRange,
    },
    Explicit {
        elements: Vec<Value>,
    },
}

fn set_file(s: &ElementSet) -> Result<SetFile> {
    Ok(match s {
        ElementSet::Split { radii, translations, .. } => {
            SetFile::Split { radii: radii.clone(), translations: translations.clone() }
        }
        ElementSet::Explicit { elements, .. } => {
            SetFile::Explicit { elements: elements.iter().map(serde_json::to_value).collect::<std::result::Result<_, _>>()? }
        }
    })
}

fn exponent(v: &Value) -> Result<ExponentVector> {
    let e: Vec<i64> = serde_json::from_value(v.clone()).map_err(|e| Error::parse(format!("exponent {v}: {e}")))?;
    Ok(ExponentVector::from(e))
}

fn decode(group: &GroupSpec, v: &Value) -> Result<GroupElement> {
    let bad = || Error::parse(format!("cannot read element {v} of {group}"));
    let family = v.get("family").and_then(Value::as_str).ok_or_else(bad)?;
    let value = v.get("value").ok_or_else(bad)?;
    let g = match (group, family) {
        (GroupSpec::FreeAbelian { d }, "abelian") => {
            let e = exponent(value)?;
            if e.rank() != *d {
                return Err(bad());
            }
            GroupElement::Abelian(e)
        }
        (GroupSpec::RingSemidirect { rings, d }, "semidirect") => {
            let translation = exponent(value.get("translation").ok_or_else(bad)?)?;
            let parts = value.get("parts").and_then(Value::as_array).ok_or_else(bad)?;
            if parts.len() != rings.len() || translation.rank() != *d {
                return Err(bad());
            }
            let mut out = Vec::new();
            for (ring, part) in rings.iter().zip(parts) {
                let terms: Vec<(Value, String)> = serde_json::from_value(part.clone()).map_err(|_| bad())?;
                let mut poly = LaurentPolynomial::zero(*d, ring.coeffs());
                for (e, c) in terms {
                    let c = LaurentPolynomial::parse(&c, *d, ring.coeffs())?;
                    poly = &poly + &c.shift(&exponent(&e)?);
                }
                out.push(ring.reduce(&poly));
            }
            GroupElement::Semidirect(SemidirectElement { parts: out, translation })
        }
        _ => return Err(bad()),
    };
    Ok(g)
}

impl CoupleFile {
    pub fn from_couple(c: &FolnerCouple) -> Result<Self> {
        let rings = match &c.group {
            GroupSpec::RingSemidirect { rings, d } => rings
                .iter()
                .map(|r| ModulePresentation::cyclic(r.coeffs(), *d, r.relations().to_vec()).map(|p| p.to_text()))
                .collect::<Result<Vec<_>>>()?,
            _ => Vec::new(),
        };
        Ok(CoupleFile {
            group: c.group.to_string(),
            d: c.group.rank(),
            rings,
            m: c.m,
            omega: set_file(&c.omega)?,
            omega_prime: set_file(&c.omega_prime)?,
        })
    }

    /// Rebuilds the couple; `budget` caps the monomials reduced per split set.
    pub fn to_couple(&self, budget: usize) -> Result<FolnerCouple> {
        let group = if self.rings.is_empty() {
            let g = GroupSpec::parse(&self.group)?;
            if g.rank() != self.d {
                return Err(Error::parse(format!("group {} does not have rank {}", self.group, self.d)));
            }
            g
        } else {
            let rings = self
                .rings
                .iter()
                .map(|t| ModulePresentation::parse(t).and_then(|p| super::ring_from_presentation(&p)))
                .collect::<Result<Vec<QuotientRing>>>()?;
            GroupSpec::ring_semidirect(rings, self.d)?
        };
        let set = |s: &SetFile| -> Result<ElementSet> {
            match s {
                SetFile::Split { radii, translations } => ElementSet::split(&group, radii.clone(), translations.clone(), budget),
                SetFile::Explicit { elements } => {
                    Ok(ElementSet::explicit(elements.iter().map(|v| decode(&group, v)).collect::<Result<Vec<_>>>()?))
                }
            }
        };
        let omega = set(&self.omega)?;
        let omega_prime = set(&self.omega_prime)?;
        Ok(FolnerCouple { group, omega, omega_prime, m: self.m })
    }
}
