//! Compact walk states for groups whose elements are a cursor in Z^d plus
//! finitely many integer labels on lattice sites.
//!
//! Wreath products and the Magnus groups both fit: a generator either moves
//! the cursor or adds to one label at the cursor. The Magnus generator
//! s_i = (a_i, e_i) adds 1 to label i at the cursor and then moves along
//! axis i; its inverse moves back first and then subtracts 1.

use smallvec::{smallvec, SmallVec};

use super::FxMap;
use crate::groups::{GroupElement, GroupSpec, LampValue, MagnusElement, WreathElement};
use crate::ring::{Coefficients, ExponentVector, LaurentPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Move { axis: usize, sign: i64 },
    Add { comp: usize, delta: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Abelian,
    Wreath,
    Magnus,
}

/// Generator actions in the order of `GroupSpec::generators`.
#[derive(Clone, Debug)]
pub(crate) struct LatticeModel {
    #[cfg_attr(not(test), allow(dead_code))]
    family: Family,
    pub d: usize,
    pub comps: usize,
    pub modulus: Option<u64>,
    pub gens: Vec<SmallVec<[Op; 2]>>,
    #[cfg_attr(not(test), allow(dead_code))]
    coeffs: Coefficients,
}

impl LatticeModel {
    pub fn from_spec(spec: &GroupSpec) -> Option<Self> {
        let d = spec.rank();
        let mut gens: Vec<SmallVec<[Op; 2]>> = Vec::new();
        let (family, comps, modulus, coeffs) = match spec {
            GroupSpec::FreeAbelian { .. } => (Family::Abelian, 0, None, Coefficients::Integer),
            GroupSpec::Wreath { lamp, .. } => (Family::Wreath, lamp.components, lamp.modulus, Coefficients::Integer),
            GroupSpec::Magnus { coeffs, .. } => {
                let m = match coeffs {
                    Coefficients::Integer => None,
                    c => Some(c.characteristic()),
                };
                (Family::Magnus, d, m, *coeffs)
            }
            _ => return None,
        };
        for g in spec.generators() {
            let ops: SmallVec<[Op; 2]> = match (&g, family) {
                (GroupElement::Abelian(v), _) => smallvec![move_op(v)?],
                (GroupElement::Wreath(w), _) => {
                    if w.lamps.is_empty() {
                        smallvec![move_op(&w.cursor)?]
                    } else {
                        let (pos, val) = &w.lamps[0];
                        if w.lamps.len() != 1 || !pos.is_zero() || !w.cursor.is_zero() {
                            return None;
                        }
                        let nz: Vec<usize> = (0..val.len()).filter(|&j| val[j] != 0).collect();
                        if nz.len() != 1 {
                            return None;
                        }
                        smallvec![Op::Add { comp: nz[0], delta: val[nz[0]] }]
                    }
                }
                (GroupElement::Magnus(m), _) => {
                    let Op::Move { axis, sign } = move_op(&m.abelian)? else { return None };
                    if sign > 0 {
                        smallvec![Op::Add { comp: axis, delta: 1 }, Op::Move { axis, sign }]
                    } else {
                        smallvec![Op::Move { axis, sign }, Op::Add { comp: axis, delta: -1 }]
                    }
                }
                _ => return None,
            };
            gens.push(ops);
        }
        Some(LatticeModel { family, d, comps, modulus, gens, coeffs })
    }

    #[inline]
    fn normalize(&self, v: i64) -> i64 {
        match self.modulus {
            Some(k) => {
                let k = k as i64;
                // Steps change a label by less than the modulus, so one
                // correction usually suffices.
                if v >= k {
                    if v < 2 * k { v - k } else { v.rem_euclid(k) }
                } else if v < 0 {
                    if v >= -k { v + k } else { v.rem_euclid(k) }
                } else {
                    v
                }
            }
            None => v,
        }
    }

    /// Packing parameters: bits per coordinate, or `None` if unsupported.
    fn packing(&self, radius: usize) -> Option<u32> {
        if self.d == 0 || self.d > 3 || self.comps > 4 {
            return None;
        }
        let bits = 30 / self.d as u32;
        ((radius as u64) < (1u64 << (bits - 1))).then_some(bits)
    }

    pub fn packer(&self, radius: usize) -> Option<Packer> {
        let bits = self.packing(radius)?;
        Some(Packer { d: self.d, bits, model: self.clone() })
    }
}

fn move_op(v: &ExponentVector) -> Option<Op> {
    let nz: Vec<usize> = (0..v.rank()).filter(|&i| v.entries()[i] != 0).collect();
    if nz.len() != 1 || v.entries()[nz[0]].abs() != 1 {
        return None;
    }
    Some(Op::Move { axis: nz[0], sign: v.entries()[nz[0]] })
}

/// Cursor and labels packed into machine words; labels are sorted by key.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct PackedState {
    cursor: u32,
    labels: SmallVec<[(u32, i32); 4]>,
}

/// Encodes lattice sites as `bits`-wide offset fields and applies steps.
#[derive(Clone, Debug)]
pub(crate) struct Packer {
    d: usize,
    bits: u32,
    model: LatticeModel,
}

impl Packer {
    fn origin(&self) -> u32 {
        let half = 1u32 << (self.bits - 1);
        (0..self.d).fold(0, |acc, i| acc | (half << (self.bits * i as u32)))
    }

    pub fn identity(&self) -> PackedState {
        PackedState { cursor: self.origin(), labels: SmallVec::new() }
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn is_identity(&self, s: &PackedState) -> bool {
        s.labels.is_empty() && s.cursor == self.origin()
    }

    pub fn n_gens(&self) -> usize {
        self.model.gens.len()
    }

    pub fn step(&self, s: &PackedState, g: usize) -> PackedState {
        let mut out = s.clone();
        for op in &self.model.gens[g] {
            match *op {
                Op::Move { axis, sign } => {
                    let unit = 1u32 << (self.bits * axis as u32);
                    out.cursor = if sign > 0 { out.cursor + unit } else { out.cursor - unit };
                }
                Op::Add { comp, delta } => {
                    let key = ((comp as u32) << 30) | out.cursor;
                    match out.labels.binary_search_by_key(&key, |e| e.0) {
                        Ok(i) => {
                            let v = self.model.normalize(out.labels[i].1 as i64 + delta);
                            if v == 0 {
                                out.labels.remove(i);
                            } else {
                                out.labels[i].1 = v as i32;
                            }
                        }
                        Err(i) => {
                            let v = self.model.normalize(delta);
                            out.labels.insert(i, (key, v as i32));
                        }
                    }
                }
            }
        }
        out
    }

    #[cfg_attr(not(test), allow(dead_code))]
    fn decode_site(&self, packed: u32) -> ExponentVector {
        let mask = (1u32 << self.bits) - 1;
        let half = 1i64 << (self.bits - 1);
        ExponentVector((0..self.d).map(|i| ((packed >> (self.bits * i as u32)) & mask) as i64 - half).collect())
    }

    #[cfg_attr(not(test), allow(dead_code))]
    /// The group element this state stands for.
    pub fn to_element(&self, s: &PackedState) -> GroupElement {
        let cursor = self.decode_site(s.cursor);
        let m = &self.model;
        let site_mask = (1u32 << 30) - 1;
        match m.family {
            Family::Abelian => GroupElement::Abelian(cursor),
            Family::Wreath => {
                let mut by_site: std::collections::BTreeMap<ExponentVector, LampValue> = Default::default();
                for &(key, v) in &s.labels {
                    let comp = (key >> 30) as usize;
                    let e = by_site
                        .entry(self.decode_site(key & site_mask))
                        .or_insert_with(|| SmallVec::from_elem(0, m.comps));
                    e[comp] = v as i64;
                }
                GroupElement::Wreath(WreathElement { lamps: by_site.into_iter().collect(), cursor })
            }
            Family::Magnus => {
                let mut module = vec![LaurentPolynomial::zero(self.d, m.coeffs); self.d];
                for &(key, v) in &s.labels {
                    let comp = (key >> 30) as usize;
                    let mono = LaurentPolynomial::monomial(
                        self.decode_site(key & site_mask),
                        m.coeffs.from_i64(v as i64),
                        m.coeffs,
                    );
                    module[comp] = &module[comp] + &mono;
                }
                GroupElement::Magnus(MagnusElement { abelian: cursor, module })
            }
        }
    }
}

/// One generator as: move, add `delta` to label `comp` at the cursor, move.
#[derive(Clone, Copy, Debug)]
struct FlatGen {
    pre: [i64; 3],
    post: [i64; 3],
    pre_offset: i64,
    post_offset: i64,
    comp: usize,
    delta: i64,
}

/// Mutable walker on dense arrays for Monte Carlo.
///
/// Labels within `radius` of the origin live in a dense window; anything
/// further out spills into a hash map. Every step writes one label (adding
/// zero for pure moves), which keeps the inner loop free of data-dependent
/// branches. The window is cleared over the bounding box of visited sites.
pub(crate) struct DenseWalker {
    d: usize,
    comps: usize,
    modulus: i64,
    gens: Vec<FlatGen>,
    radius: i64,
    side: i64,
    /// Entries per label component.
    slab: usize,
    dense: Vec<i32>,
    outside: FxMap<(usize, [i64; 3]), i64>,
    cursor: [i64; 3],
    /// Window index of the cursor site.
    at: i64,
    /// Whether every site within n steps lies in the window.
    inside: bool,
    lo: [i64; 3],
    hi: [i64; 3],
}

/// Window indices of the sites visited so far, for every component.
#[derive(Clone, Copy)]
struct VisitedBox {
    d: usize,
    comps: usize,
    radius: i64,
    side: i64,
    slab: usize,
    lo: [i64; 3],
    hi: [i64; 3],
}

impl VisitedBox {
    fn for_each(self, mut f: impl FnMut(usize)) {
        let r = self.radius;
        let lo: [i64; 3] = std::array::from_fn(|i| self.lo[i].max(-r) + r);
        let hi: [i64; 3] = std::array::from_fn(|i| self.hi[i].min(r) + r);
        if (0..self.d).any(|i| lo[i] > hi[i]) {
            return;
        }
        for c in 0..self.comps {
            let base = c * self.slab;
            match self.d {
                1 => (lo[0]..=hi[0]).for_each(|x| f(base + x as usize)),
                2 => {
                    for y in lo[1]..=hi[1] {
                        let row = base + (y * self.side) as usize;
                        (lo[0]..=hi[0]).for_each(|x| f(row + x as usize));
                    }
                }
                _ => {
                    for z in lo[2]..=hi[2] {
                        for y in lo[1]..=hi[1] {
                            let row = base + ((z * self.side + y) * self.side) as usize;
                            (lo[0]..=hi[0]).for_each(|x| f(row + x as usize));
                        }
                    }
                }
            }
        }
    }
}

/// Largest dense window, in entries.
const DENSE_LIMIT: usize = 1 << 23;

impl DenseWalker {
    /// A walker for walks of at most `n` steps.
    pub fn new(model: &LatticeModel, n: usize) -> Option<Self> {
        let comps = model.comps.max(1);
        let mut radius = n as i64;
        while radius > 0 && ((2 * radius + 1) as usize).pow(model.d as u32) * comps > DENSE_LIMIT {
            radius /= 2;
        }
        Self::with_radius(model, n, radius)
    }

    fn with_radius(model: &LatticeModel, n: usize, radius: i64) -> Option<Self> {
        if model.d > 3 || model.d == 0 {
            return None;
        }
        let comps = model.comps.max(1);
        let side = 2 * radius + 1;
        let slab = (side as usize).pow(model.d as u32);
        let offset = |v: &[i64; 3]| (0..model.d).rev().fold(0, |acc, i| acc * side + v[i]);
        let mut gens = Vec::with_capacity(model.gens.len());
        for ops in &model.gens {
            let mut g = FlatGen { pre: [0; 3], post: [0; 3], pre_offset: 0, post_offset: 0, comp: 0, delta: 0 };
            let mut added = false;
            for op in ops {
                match *op {
                    Op::Move { axis, sign } if added => g.post[axis] += sign,
                    Op::Move { axis, sign } => g.pre[axis] += sign,
                    Op::Add { comp, delta } if !added => {
                        added = true;
                        g.comp = comp;
                        g.delta = match model.modulus {
                            Some(k) => delta.rem_euclid(k as i64),
                            None => delta,
                        };
                    }
                    Op::Add { .. } => return None,
                }
            }
            g.pre_offset = offset(&g.pre);
            g.post_offset = offset(&g.post);
            gens.push(g);
        }
        let modulus = model.modulus.map_or(0, |k| k as i64);
        let mut w = DenseWalker {
            d: model.d,
            comps,
            modulus,
            gens,
            radius,
            side,
            slab,
            dense: vec![0; slab * comps],
            outside: FxMap::default(),
            cursor: [0; 3],
            at: 0,
            inside: radius >= n as i64,
            lo: [0; 3],
            hi: [0; 3],
        };
        w.at = w.origin();
        Some(w)
    }

    fn origin(&self) -> i64 {
        (0..self.d).fold(0, |acc, _| acc * self.side + self.radius)
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    fn visited(&self) -> VisitedBox {
        VisitedBox { d: self.d, comps: self.comps, radius: self.radius, side: self.side, slab: self.slab, lo: self.lo, hi: self.hi }
    }

    pub fn reset(&mut self) {
        let visited = self.visited();
        let dense = &mut self.dense;
        visited.for_each(|i| dense[i] = 0);
        self.outside.clear();
        self.cursor = [0; 3];
        self.at = self.origin();
        self.lo = [0; 3];
        self.hi = [0; 3];
    }

    #[inline]
    fn wrap(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            return v;
        }
        let v = v - self.modulus * i64::from(v >= self.modulus);
        v + self.modulus * i64::from(v < 0)
    }

    #[inline(always)]
    fn shift<const D: usize>(&mut self, delta: &[i64; 3], offset: i64) {
        for i in 0..D {
            self.cursor[i] += delta[i];
            self.lo[i] = self.lo[i].min(self.cursor[i]);
            self.hi[i] = self.hi[i].max(self.cursor[i]);
        }
        self.at += offset;
    }

    pub fn step(&mut self, g: usize) {
        match self.d {
            1 => self.step_in::<1>(g),
            2 => self.step_in::<2>(g),
            _ => self.step_in::<3>(g),
        }
    }

    /// Walks `n` steps from the current state with generator indices from `choose`.
    pub fn walk(&mut self, n: usize, choose: impl FnMut() -> usize) {
        match self.d {
            1 => self.walk_in::<1>(n, choose),
            2 => self.walk_in::<2>(n, choose),
            _ => self.walk_in::<3>(n, choose),
        }
    }

    fn walk_in<const D: usize>(&mut self, n: usize, mut choose: impl FnMut() -> usize) {
        for _ in 0..n {
            let g = choose();
            self.step_in::<D>(g);
        }
    }

    #[inline(always)]
    fn step_in<const D: usize>(&mut self, g: usize) {
        let gen = self.gens[g];
        self.shift::<D>(&gen.pre, gen.pre_offset);
        if self.inside || (0..D).all(|i| self.cursor[i].abs() <= self.radius) {
            let i = gen.comp * self.slab + self.at as usize;
            self.dense[i] = self.wrap(self.dense[i] as i64 + gen.delta) as i32;
        } else if gen.delta != 0 {
            let key = (gen.comp, self.cursor);
            let v = self.wrap(self.outside.get(&key).copied().unwrap_or(0) + gen.delta);
            if v == 0 {
                self.outside.remove(&key);
            } else {
                self.outside.insert(key, v);
            }
        }
        self.shift::<D>(&gen.post, gen.post_offset);
    }

    pub fn at_identity(&self) -> bool {
        if self.cursor != [0; 3] || !self.outside.is_empty() {
            return false;
        }
        let mut clear = true;
        self.visited().for_each(|i| clear &= self.dense[i] == 0);
        clear
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SPECS: [&str; 7] = [
        "zd:2",
        "lamplighter:p=2,d=1",
        "lamplighter:p=3,d=2",
        "wreath-z:d=1",
        "free-metabelian:d=2",
        "p-metabelian:d=2,p=3",
        "free-metabelian:d=3",
    ];

    /// Packed steps and dense steps agree with group multiplication.
    #[test]
    fn lattice_routes_match_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in SPECS {
            let spec = GroupSpec::parse(s).unwrap();
            let gens = spec.generators();
            let model = LatticeModel::from_spec(&spec).unwrap();
            assert_eq!(model.gens.len(), gens.len(), "{s}");
            let packer = model.packer(64).unwrap();
            let mut dense = DenseWalker::new(&model, 30).unwrap();
            let mut spilling = DenseWalker::with_radius(&model, 30, 2).unwrap();
            for _ in 0..40 {
                let mut state = packer.identity();
                let mut elt = spec.identity();
                dense.reset();
                spilling.reset();
                for _ in 0..30 {
                    let g = rng.gen_range(0..gens.len());
                    state = packer.step(&state, g);
                    dense.step(g);
                    spilling.step(g);
                    elt = spec.multiply(&elt, &gens[g]).unwrap();
                    assert_eq!(packer.to_element(&state), elt, "{s}");
                    assert_eq!(packer.is_identity(&state), elt == spec.identity());
                    assert_eq!(dense.at_identity(), elt == spec.identity(), "{s}");
                    assert_eq!(spilling.at_identity(), elt == spec.identity(), "{s}");
                }
            }
        }
    }
}
