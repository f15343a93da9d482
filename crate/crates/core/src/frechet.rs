//! Exact decision procedure for the continuous Fréchet distance.
//!
//! The free-space diagram is swept one row at a time: the *base* curve spans
//! the columns and the other curve is fed in vertex by vertex. The sweep state
//! is a [`Frontier`], which can be cloned to explore many continuations of the
//! same prefix; candidate enumeration relies on that.

use crate::coord::Coord;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::point::Point;

type Span<P> = Option<(<P as Point>::Param, <P as Point>::Param)>;

fn clip_from<T: Ord + Clone>(span: (T, T), floor: &T) -> Option<(T, T)> {
    let lo = if span.0 >= *floor { span.0 } else { floor.clone() };
    (lo <= span.1).then_some((lo, span.1))
}

/// Reachable part of the horizontal line through the last fed vertex.
#[derive(Clone, Debug)]
pub struct Frontier<'a, P: Point> {
    base: &'a [P],
    radius: Coord,
    last: Option<P>,
    /// Whether the whole fed prefix stays within `radius` of `base[0]`.
    left_edge: bool,
    /// One reachable span per base segment.
    spans: Vec<Span<P>>,
}

impl<'a, P: Point> Frontier<'a, P> {
    /// An empty sweep over `base`, which must be non-empty.
    pub fn new(base: &'a [P], radius: Coord) -> Self {
        assert!(!base.is_empty(), "frontier over an empty curve");
        Frontier {
            base,
            radius,
            last: None,
            left_edge: true,
            spans: vec![None; base.len() - 1],
        }
    }

    /// Appends a vertex to the fed curve.
    pub fn push(&mut self, v: P) {
        match self.last {
            None => self.start(v),
            Some(prev) => self.advance(prev, v),
        }
        self.last = Some(v);
    }

    /// A copy with `v` appended.
    pub fn pushed(&self, v: P) -> Self {
        let mut next = self.clone();
        next.push(v);
        next
    }

    fn start(&mut self, v: P) {
        self.left_edge = self.base[0].within(v, self.radius);
        let mut open = self.left_edge;
        for i in 0..self.spans.len() {
            let (a, b) = (self.base[i], self.base[i + 1]);
            self.spans[i] = if open {
                v.free_interval(a, b, self.radius)
                    .filter(|(lo, _)| *lo == P::param_start())
            } else {
                None
            };
            open = matches!(&self.spans[i], Some((_, hi)) if *hi == P::param_end(a, b));
        }
    }

    fn advance(&mut self, prev: P, v: P) {
        let r = self.radius;
        let seg_end = P::param_end(prev, v);
        let mut left: Span<P> = if self.left_edge {
            self.base[0]
                .free_interval(prev, v, r)
                .filter(|(lo, _)| *lo == P::param_start())
        } else {
            None
        };
        self.left_edge = matches!(&left, Some((_, hi)) if *hi == seg_end);

        for i in 0..self.spans.len() {
            let (a, b) = (self.base[i], self.base[i + 1]);
            let bottom = self.spans[i].take();
            let top = match (&left, &bottom) {
                (None, None) => None,
                (Some(_), _) => v.free_interval(a, b, r),
                (None, Some((lo, _))) => v.free_interval(a, b, r).and_then(|s| clip_from(s, lo)),
            };
            let right = match (&bottom, &left) {
                (None, None) => None,
                (Some(_), _) => b.free_interval(prev, v, r),
                (None, Some((lo, _))) => b.free_interval(prev, v, r).and_then(|s| clip_from(s, lo)),
            };
            self.spans[i] = top;
            left = right;
        }
    }

    /// True if some reachable point remains on the current line. Once this is
    /// false no continuation can succeed.
    pub fn alive(&self) -> bool {
        if self.spans.is_empty() {
            self.left_edge
        } else {
            self.left_edge || self.spans.iter().any(Option::is_some)
        }
    }

    /// True if the fed curve, ending at its last vertex, is within the radius
    /// of the base curve.
    pub fn reaches_end(&self) -> bool {
        match self.spans.last() {
            None => self.left_edge,
            Some(span) => {
                let n = self.base.len();
                matches!(span, Some((_, hi)) if *hi == P::param_end(self.base[n - 2], self.base[n - 1]))
            }
        }
    }

    pub fn last(&self) -> Option<P> {
        self.last
    }

    /// Index of the first base vertex at or after the latest reachable point.
    /// Any successful continuation still has to cover `base[i..]`.
    pub fn after_latest(&self) -> Option<usize> {
        match self.spans.iter().rposition(Option::is_some) {
            Some(i) => Some(i + 1),
            None => self.left_edge.then_some(0),
        }
    }
}

/// Decides `d_F(a, b) <= radius` on raw vertex slices.
pub fn decide_slices<P: Point>(a: &[P], b: &[P], radius: Coord) -> bool {
    let (base, fed) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if !base[0].within(fed[0], radius) || !base[base.len() - 1].within(fed[fed.len() - 1], radius)
    {
        return false;
    }
    let mut f = Frontier::new(base, radius);
    for &v in fed {
        f.push(v);
        if !f.alive() {
            return false;
        }
    }
    f.reaches_end()
}

/// Decides whether the Fréchet distance between `a` and `b` is at most
/// `radius`. Uses memory linear in the shorter curve.
pub fn frechet_decide<P: Point>(a: &Curve<P>, b: &Curve<P>, radius: Coord) -> Result<bool> {
    if radius < Coord::ZERO {
        return Err(Error::input(format!("negative radius {radius}")));
    }
    if radius > P::radius_limit() {
        return Err(Error::Overflow(format!("radius {radius} exceeds {}", P::radius_limit())));
    }
    Ok(decide_slices(a.vertices(), b.vertices(), radius))
}
