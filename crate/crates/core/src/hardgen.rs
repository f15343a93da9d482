//! Orthogonal-vectors instances and the curve gadgets that encode them.
//!
//! Queries come from `A`, inputs from `B`. At threshold `delta` a query is
//! within `delta` of an input exactly when the two vectors are orthogonal,
//! and otherwise at least `2 * delta` (`OneD2MinusEps`) or `3 * delta` away.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coord::Coord;
use crate::curve::{AnyCurve, Curve1, Curve2};
use crate::error::{Error, Result};
use crate::point::Point2;

/// A 0/1 vector.
pub type BitVec = Vec<bool>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvInstance {
    a: Vec<BitVec>,
    b: Vec<BitVec>,
    dim: usize,
    sparsity: Option<usize>,
}

impl OvInstance {
    pub fn new(a: Vec<BitVec>, b: Vec<BitVec>, dim: usize, sparsity: Option<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("vector dimension must be positive"));
        }
        for (side, set) in [("A", &a), ("B", &b)] {
            if let Some(i) = set.iter().position(|v| v.len() != dim) {
                return Err(Error::input(format!("{side}[{i}] has dimension {}, expected {dim}", set[i].len())));
            }
        }
        if let Some(k) = sparsity {
            if let Some(i) = a.iter().position(|v| ones(v) > k) {
                return Err(Error::input(format!("A[{i}] has {} ones, more than {k}", ones(&a[i]))));
            }
        }
        Ok(OvInstance { a, b, dim, sparsity })
    }

    pub fn a(&self) -> &[BitVec] {
        &self.a
    }

    pub fn b(&self) -> &[BitVec] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sparsity(&self) -> Option<usize> {
        self.sparsity
    }

    /// Brute-force answer: some `a`, `b` with zero inner product.
    pub fn has_orthogonal_pair(&self) -> bool {
        self.a.iter().any(|a| self.b.iter().any(|b| orthogonal(a, b)))
    }
}

fn ones(v: &[bool]) -> usize {
    v.iter().filter(|&&x| x).count()
}

pub fn orthogonal(a: &[bool], b: &[bool]) -> bool {
    !a.iter().zip(b).any(|(&x, &y)| x && y)
}

/// Rewrites `(A, B)` so every vector in `A` has exactly `blocks` ones.
///
/// The dimension is padded with zeros to a multiple of `blocks` and split
/// into `blocks` parts of width `w`. Part `i` of `a` becomes a single one at
/// `i * 2^w + value(a_i)`, reading bits most significant first. For `b`,
/// position `i * 2^w + value(beta)` is set when `b_i` meets `beta`.
pub fn sparse_transform(instance: &OvInstance, blocks: usize) -> Result<OvInstance> {
    if blocks == 0 {
        return Err(Error::params("block count must be positive"));
    }
    let width = instance.dim.div_ceil(blocks);
    if width >= 20 {
        return Err(Error::params(format!("block width {width} gives too large a dimension")));
    }
    let span = 1usize << width;
    let new_dim = blocks * span;
    let part = |v: &[bool], i: usize| -> usize {
        (0..width).fold(0, |acc, j| acc << 1 | usize::from(v.get(i * width + j).copied().unwrap_or(false)))
    };
    let a = instance
        .a
        .iter()
        .map(|v| {
            let mut out = vec![false; new_dim];
            for i in 0..blocks {
                out[i * span + part(v, i)] = true;
            }
            out
        })
        .collect();
    let b = instance
        .b
        .iter()
        .map(|v| {
            let mut out = vec![false; new_dim];
            for i in 0..blocks {
                let bi = part(v, i);
                for beta in 0..span {
                    out[i * span + beta] = bi & beta != 0;
                }
            }
            out
        })
        .collect();
    OvInstance::new(a, b, new_dim, Some(blocks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetFamily {
    OneD2MinusEps,
    OneD3MinusEps,
    TwoD3MinusEps,
}

impl GadgetFamily {
    pub const ALL: [GadgetFamily; 3] =
        [GadgetFamily::OneD2MinusEps, GadgetFamily::OneD3MinusEps, GadgetFamily::TwoD3MinusEps];

    pub fn name(self) -> &'static str {
        match self {
            GadgetFamily::OneD2MinusEps => "one_d_2minus_eps",
            GadgetFamily::OneD3MinusEps => "one_d_3minus_eps",
            GadgetFamily::TwoD3MinusEps => "two_d_3minus_eps",
        }
    }

    /// Lower bound on the distance of a non-orthogonal pair, in multiples of delta.
    pub fn gap(self) -> i64 {
        match self {
            GadgetFamily::OneD2MinusEps => 2,
            _ => 3,
        }
    }

    pub fn needs_sparsity(self) -> bool {
        self != GadgetFamily::OneD3MinusEps
    }

    pub fn dim(self) -> usize {
        match self {
            GadgetFamily::TwoD3MinusEps => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GadgetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GadgetFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::params(format!("unknown gadget family {s:?}")))
    }
}

/// Curves encoding an instance, with `delta` in units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCurves {
    pub queries: Vec<AnyCurve>,
    pub inputs: Vec<AnyCurve>,
    pub delta: Coord,
}

fn gadget_1d(family: GadgetFamily, query_side: bool, bit: bool) -> &'static [i64] {
    use GadgetFamily::*;
    match (family, query_side, bit) {
        (OneD2MinusEps, true, false) => &[0, 6],
        (OneD2MinusEps, true, true) => &[0, 6, 2, 6],
        (OneD2MinusEps, false, false) => &[0, 5, 3, 6],
        (OneD2MinusEps, false, true) => &[0, 6],
        (_, true, true) => &[0, 6, 0],
        (_, false, false) => &[0, 7, 0],
        (_, true, false) => &[0, 8, 0],
        (_, false, true) => &[0, 9, 0],
    }
}

fn bump_height(query_side: bool, bit: bool) -> i64 {
    match (query_side, bit) {
        (true, false) => 0,
        (true, true) => 2,
        (false, false) => 1,
        (false, true) => -1,
    }
}

fn encode(family: GadgetFamily, v: &[bool], query_side: bool, scale: i64) -> Result<AnyCurve> {
    match family {
        GadgetFamily::TwoD3MinusEps => {
            let mut pts = Vec::with_capacity(5 * v.len());
            for (i, &bit) in v.iter().enumerate() {
                let (x0, y) = (6 * i as i64, bump_height(query_side, bit));
                for (x, y) in [(0, 0), (3, 0), (3, y), (6, y), (6, 0)] {
                    pts.push(Point2::new((x0 + x) * scale, y * scale));
                }
            }
            Ok(Curve2::new(&pts)?.into())
        }
        _ => {
            let shift = family == GadgetFamily::OneD2MinusEps;
            let mut units = Vec::with_capacity(4 * v.len());
            for (i, &bit) in v.iter().enumerate() {
                let offset = if shift { 6 * i as i64 } else { 0 };
                units.extend(gadget_1d(family, query_side, bit).iter().map(|&x| (x + offset) * scale));
            }
            Ok(Curve1::from_units(&units)?.into())
        }
    }
}

/// Builds query curves from `A` and input curves from `B`; `scale` units
/// make up one gadget unit, so `delta` equals `scale`.
pub fn generate(instance: &OvInstance, family: GadgetFamily, scale: i64) -> Result<GadgetCurves> {
    if scale <= 0 {
        return Err(Error::params("scale must be positive"));
    }
    if family.needs_sparsity() && instance.sparsity.is_none() {
        return Err(Error::input(format!("family {family} needs a sparsity bound on A")));
    }
    let queries = instance.a.iter().map(|v| encode(family, v, true, scale)).collect::<Result<_>>()?;
    let inputs = instance.b.iter().map(|v| encode(family, v, false, scale)).collect::<Result<_>>()?;
    Ok(GadgetCurves { queries, inputs, delta: Coord::checked(scale)? })
}

/// Settings for [`sample_instance`].
#[derive(Clone, Copy, Debug)]
pub struct SampleSpec {
    pub a_count: usize,
    pub b_count: usize,
    pub dim: usize,
    /// Most ones in any `a`; `None` draws every bit independently.
    pub sparsity: Option<usize>,
    /// Chance of a one in `B` (and in `A` when there is no sparsity bound).
    pub density: f64,
    /// Forces some pair to be orthogonal.
    pub plant: bool,
}

/// Draws a reproducible instance. With `plant`, one random `b` is cleared
/// wherever a random `a` has a one.
pub fn sample_instance(spec: &SampleSpec, seed: u64) -> Result<OvInstance> {
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::params("density must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = spec.dim;
    let mut a: Vec<BitVec> = (0..spec.a_count)
        .map(|_| match spec.sparsity {
            Some(k) => {
                let count = rng.gen_range(0..=k.min(d));
                let mut v = vec![false; d];
                for i in sample(&mut rng, d, count) {
                    v[i] = true;
                }
                v
            }
            None => (0..d).map(|_| rng.gen_bool(spec.density)).collect(),
        })
        .collect();
    let mut b: Vec<BitVec> = (0..spec.b_count).map(|_| (0..d).map(|_| rng.gen_bool(spec.density)).collect()).collect();
    if spec.plant && !a.is_empty() && !b.is_empty() {
        let (i, j) = (rng.gen_range(0..a.len()), rng.gen_range(0..b.len()));
        let ai = std::mem::take(&mut a[i]);
        for (bit, &x) in b[j].iter_mut().zip(&ai) {
            *bit &= !x;
        }
        a[i] = ai;
    }
    OvInstance::new(a, b, d, spec.sparsity)
}
