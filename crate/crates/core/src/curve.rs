//! Polygonal curves.
//!
//! A [`Curve`] is always normalized: it has at least one vertex, no two
//! consecutive vertices are equal, and no interior vertex lies on the segment
//! between its neighbours. Normalizing does not change the curve up to
//! reparametrization, so Fréchet distances are unaffected.

use std::fmt;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::point::{Point, Point2};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Curve<P: Point = Coord> {
    vertices: Vec<P>,
}

pub type Curve1 = Curve<Coord>;
pub type Curve2 = Curve<Point2>;

/// Removes repeated and non-turning vertices, keeping both endpoints.
pub fn normalize<P: Point>(raw: &[P]) -> Vec<P> {
    let mut out: Vec<P> = Vec::with_capacity(raw.len());
    for &v in raw {
        if out.last() == Some(&v) {
            continue;
        }
        while out.len() >= 2 {
            let mid = out[out.len() - 1];
            if mid.on_segment(out[out.len() - 2], v) {
                out.pop();
            } else {
                break;
            }
        }
        // Popping can expose a vertex equal to `v`.
        if out.last() == Some(&v) {
            continue;
        }
        out.push(v);
    }
    out
}

/// True if the vertex sequence is already normalized.
pub fn is_normalized<P: Point>(seq: &[P]) -> bool {
    !seq.is_empty()
        && seq.windows(2).all(|w| w[0] != w[1])
        && seq.windows(3).all(|w| !w[1].on_segment(w[0], w[2]))
}

impl<P: Point> Curve<P> {
    /// Normalizes `raw` into a curve. Fails on an empty sequence or a vertex
    /// outside the coordinate range.
    pub fn new(raw: &[P]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::input("curve has no vertices"));
        }
        for v in raw {
            v.validate()?;
        }
        Ok(Curve { vertices: normalize(raw) })
    }

    pub fn vertices(&self) -> &[P] {
        &self.vertices
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> P {
        self.vertices[0]
    }

    pub fn last(&self) -> P {
        self.vertices[self.vertices.len() - 1]
    }

    /// Joins `self` and `other` with a connecting segment.
    pub fn concat(&self, other: &Curve<P>) -> Curve<P> {
        let mut raw = self.vertices.clone();
        raw.extend_from_slice(&other.vertices);
        Curve { vertices: normalize(&raw) }
    }

    /// Moves every vertex by `by`.
    pub fn translate(&self, by: P) -> Result<Curve<P>> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.offset(by))
            .collect::<Result<Vec<_>>>()?;
        Ok(Curve { vertices })
    }

    /// The curve through the vertices at `indices`, normalized.
    pub fn induced(&self, indices: &[usize]) -> Result<Curve<P>> {
        let mut raw = Vec::with_capacity(indices.len());
        for &i in indices {
            raw.push(
                *self
                    .vertices
                    .get(i)
                    .ok_or_else(|| Error::input(format!("vertex index {i} out of range")))?,
            );
        }
        Curve::new(&raw)
    }
}

impl Curve1 {
    /// Builds a one-dimensional curve from raw unit counts.
    pub fn from_units(raw: &[i64]) -> Result<Self> {
        let pts: Vec<Coord> = raw.iter().map(|&u| Coord::new(u)).collect();
        Curve::new(&pts)
    }

    pub fn units(&self) -> Vec<i64> {
        self.vertices.iter().map(|c| c.units()).collect()
    }

    pub fn min_max(&self) -> (Coord, Coord) {
        let lo = self.vertices.iter().copied().min().unwrap_or_default();
        let hi = self.vertices.iter().copied().max().unwrap_or_default();
        (lo, hi)
    }
}

impl Curve2 {
    pub fn from_pairs(raw: &[(i64, i64)]) -> Result<Self> {
        let pts: Vec<Point2> = raw.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        Curve::new(&pts)
    }
}

impl<P: Point> fmt::Debug for Curve<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v:?}")?;
        }
        f.write_str(">")
    }
}

/// Direction of a monotone curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// True if no later vertex falls more than `delta` behind an earlier one in
/// the given direction.
pub fn is_delta_monotone(curve: &Curve1, delta: Coord, dir: Direction) -> bool {
    is_delta_monotone_slice(curve.vertices(), delta, dir)
}

pub(crate) fn is_delta_monotone_slice(seq: &[Coord], delta: Coord, dir: Direction) -> bool {
    let mut best = match seq.first() {
        Some(&v) => v,
        None => return true,
    };
    for &v in &seq[1..] {
        match dir {
            Direction::Increasing => {
                if best - v > delta {
                    return false;
                }
                best = best.max(v);
            }
            Direction::Decreasing => {
                if v - best > delta {
                    return false;
                }
                best = best.min(v);
            }
        }
    }
    true
}

/// Fréchet distance between two one-dimensional segments.
pub fn segment_frechet(a: (Coord, Coord), b: (Coord, Coord)) -> Coord {
    a.0.dist(b.0).max(a.1.dist(b.1))
}

/// Squared Fréchet distance between two planar segments.
pub fn segment_frechet_sq(a: (Point2, Point2), b: (Point2, Point2)) -> i128 {
    a.0.dist_sq(b.0).max(a.1.dist_sq(b.1))
}

/// A curve of either dimension, as read from a curve file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyCurve {
    One(Curve1),
    Two(Curve2),
}

impl AnyCurve {
    pub fn dim(&self) -> usize {
        match self {
            AnyCurve::One(_) => 1,
            AnyCurve::Two(_) => 2,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyCurve::One(c) => c.len(),
            AnyCurve::Two(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_one(&self) -> Option<&Curve1> {
        match self {
            AnyCurve::One(c) => Some(c),
            AnyCurve::Two(_) => None,
        }
    }

    pub fn as_two(&self) -> Option<&Curve2> {
        match self {
            AnyCurve::One(_) => None,
            AnyCurve::Two(c) => Some(c),
        }
    }
}

impl From<Curve1> for AnyCurve {
    fn from(c: Curve1) -> Self {
        AnyCurve::One(c)
    }
}

impl From<Curve2> for AnyCurve {
    fn from(c: Curve2) -> Self {
        AnyCurve::Two(c)
    }
}
