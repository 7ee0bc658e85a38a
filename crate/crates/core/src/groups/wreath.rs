use serde::Serialize;
use smallvec::SmallVec;

use crate::ring::ExponentVector;

/// Value of a single lamp: an element of Z^r or (Z/k)^r.
pub type LampValue = SmallVec<[i64; 2]>;

/// The lamp group Z^r (`modulus = None`) or (Z/k)^r.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct LampGroup {
    pub modulus: Option<u64>,
    pub components: usize,
}

impl LampGroup {
    pub fn cyclic(k: u64) -> Self {
        LampGroup { modulus: Some(k), components: 1 }
    }

    pub fn integers() -> Self {
        LampGroup { modulus: None, components: 1 }
    }

    fn normalize(&self, v: i64) -> i64 {
        match self.modulus {
            Some(k) => v.rem_euclid(k as i64),
            None => v,
        }
    }

    pub fn basis(&self, j: usize) -> LampValue {
        let mut v: LampValue = SmallVec::from_elem(0, self.components);
        v[j] = 1;
        v
    }

    /// Order of a basis lamp (0 for infinite order).
    pub fn order(&self) -> u64 {
        self.modulus.unwrap_or(0)
    }
}

/// (f, h) with f a finitely supported lamp configuration and h the cursor.
///
/// Lamps are kept sorted by position with no zero values stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct WreathElement {
    pub lamps: Vec<(ExponentVector, LampValue)>,
    pub cursor: ExponentVector,
}

impl WreathElement {
    pub fn identity(d: usize) -> Self {
        WreathElement { lamps: Vec::new(), cursor: ExponentVector::zero(d) }
    }

    pub fn lamp(&self, at: &ExponentVector) -> Option<&LampValue> {
        self.lamps.binary_search_by(|(p, _)| p.cmp(at)).ok().map(|i| &self.lamps[i].1)
    }
}

/// (f, h)(f', h') = (f + f'(· − h), h + h').
pub(crate) fn multiply(lg: &LampGroup, a: &WreathElement, b: &WreathElement) -> WreathElement {
    let mut lamps = Vec::with_capacity(a.lamps.len() + b.lamps.len());
    let mut i = 0;
    let mut j = 0;
    // Translation preserves the lexicographic order, so shifted b stays sorted.
    let shifted: Vec<ExponentVector> = b.lamps.iter().map(|(p, _)| p + &a.cursor).collect();
    while i < a.lamps.len() || j < b.lamps.len() {
        let take_a = j == b.lamps.len() || (i < a.lamps.len() && a.lamps[i].0 < shifted[j]);
        let take_b = i == a.lamps.len() || (j < b.lamps.len() && shifted[j] < a.lamps[i].0);
        if take_a {
            lamps.push(a.lamps[i].clone());
            i += 1;
        } else if take_b {
            lamps.push((shifted[j].clone(), b.lamps[j].1.clone()));
            j += 1;
        } else {
            let v: LampValue =
                a.lamps[i].1.iter().zip(b.lamps[j].1.iter()).map(|(x, y)| lg.normalize(x + y)).collect();
            if v.iter().any(|&x| x != 0) {
                lamps.push((shifted[j].clone(), v));
            }
            i += 1;
            j += 1;
        }
    }
    WreathElement { lamps, cursor: &a.cursor + &b.cursor }
}

/// (f, h)^{-1} = (−f(· + h), −h).
pub(crate) fn inverse(lg: &LampGroup, a: &WreathElement) -> WreathElement {
    let back = -&a.cursor;
    let lamps = a
        .lamps
        .iter()
        .map(|(p, v)| (p + &back, v.iter().map(|&x| lg.normalize(-x)).collect()))
        .collect();
    WreathElement { lamps, cursor: back }
}
