//! Vertex types and the exact free-space primitive.
//!
//! A free interval is the set of positions on a segment `a -> b` within a
//! radius of some point. Positions are returned in a per-segment parameter
//! space; two parameters are only ever compared when they live on the same
//! segment, which lets both dimensions drop the common denominator.

use std::cmp::Ordering;
use std::fmt::{self, Debug};
use std::hash::Hash;

use num_bigint::BigInt;

use crate::coord::{Coord, COORD_LIMIT, COORD_LIMIT_2D};
use crate::error::{Error, Result};

/// A curve vertex.
pub trait Point: Copy + Eq + Hash + Debug + Send + Sync + 'static {
    /// Position along a segment, scaled so that the start is zero.
    type Param: Ord + Clone + Debug;

    /// Number of coordinates per vertex.
    const DIM: usize;

    fn within(self, other: Self, radius: Coord) -> bool;

    /// True if `self` lies on the closed segment `a b`.
    fn on_segment(self, a: Self, b: Self) -> bool;

    /// Positions on `a -> b` within `radius` of `self`, as a closed parameter
    /// range, or `None` if there are none.
    fn free_interval(self, a: Self, b: Self, radius: Coord)
        -> Option<(Self::Param, Self::Param)>;

    fn param_start() -> Self::Param;

    /// Parameter of `b` on `a -> b`.
    fn param_end(a: Self, b: Self) -> Self::Param;

    /// Rejects points outside the supported coordinate range.
    fn validate(self) -> Result<()>;

    fn offset(self, by: Self) -> Result<Self>;

    /// Largest radius for which exact evaluation is guaranteed.
    fn radius_limit() -> Coord;
}

impl Point for Coord {
    /// Distance travelled from the segment start, in units.
    type Param = i64;

    const DIM: usize = 1;

    fn within(self, other: Self, radius: Coord) -> bool {
        Coord::within(self, other, radius)
    }

    fn on_segment(self, a: Self, b: Self) -> bool {
        a.min(b) <= self && self <= a.max(b)
    }

    fn free_interval(self, a: Self, b: Self, radius: Coord) -> Option<(i64, i64)> {
        let lo = (a.min(b)).max(self - radius);
        let hi = (a.max(b)).min(self + radius);
        if lo > hi {
            return None;
        }
        if b >= a {
            Some(((lo - a).units(), (hi - a).units()))
        } else {
            Some(((a - hi).units(), (a - lo).units()))
        }
    }

    fn param_start() -> i64 {
        0
    }

    fn param_end(a: Self, b: Self) -> i64 {
        a.dist(b).units()
    }

    fn validate(self) -> Result<()> {
        Coord::checked(self.units()).map(|_| ())
    }

    fn offset(self, by: Self) -> Result<Self> {
        let v = self
            .units()
            .checked_add(by.units())
            .ok_or_else(|| Error::Overflow("translation".into()))?;
        Coord::checked(v)
    }

    fn radius_limit() -> Coord {
        Coord::new(COORD_LIMIT)
    }
}

/// A planar vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point2 {
    pub x: Coord,
    pub y: Coord,
}

impl Point2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Point2 { x: Coord::new(x), y: Coord::new(y) }
    }

    fn diff(self, other: Point2) -> (i128, i128) {
        (
            (self.x.units() - other.x.units()) as i128,
            (self.y.units() - other.y.units()) as i128,
        )
    }

    pub fn dist_sq(self, other: Point2) -> i128 {
        let (dx, dy) = self.diff(other);
        dx * dx + dy * dy
    }
}

impl Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Point for Point2 {
    /// Scaled by the squared segment length.
    type Param = QuadParam;

    const DIM: usize = 2;

    fn within(self, other: Self, radius: Coord) -> bool {
        let r = radius.units() as i128;
        self.dist_sq(other) <= r * r
    }

    fn on_segment(self, a: Self, b: Self) -> bool {
        let (ax, ay) = a.diff(self);
        let (bx, by) = b.diff(self);
        ax * by - ay * bx == 0 && ax * bx + ay * by <= 0
    }

    fn free_interval(self, a: Self, b: Self, radius: Coord) -> Option<(QuadParam, QuadParam)> {
        let (dx, dy) = b.diff(a);
        let (wx, wy) = a.diff(self);
        let r = radius.units() as i128;
        let len_sq = dx * dx + dy * dy;
        let c = wx * wx + wy * wy - r * r;
        if len_sq == 0 {
            return (c <= 0).then_some((QuadParam::ZERO, QuadParam::ZERO));
        }
        let half_b = dx * wx + dy * wy;
        let disc = half_b * half_b - len_sq * c;
        if disc < 0 {
            return None;
        }
        let lo = QuadParam::surd(-half_b, -1, disc).max(QuadParam::ZERO);
        let hi = QuadParam::surd(-half_b, 1, disc).min(QuadParam::whole(len_sq));
        (lo <= hi).then_some((lo, hi))
    }

    fn param_start() -> QuadParam {
        QuadParam::ZERO
    }

    fn param_end(a: Self, b: Self) -> QuadParam {
        QuadParam::whole(a.dist_sq(b))
    }

    fn validate(self) -> Result<()> {
        for c in [self.x, self.y] {
            if c.units().unsigned_abs() > COORD_LIMIT_2D as u64 {
                return Err(Error::Overflow(format!("{c} exceeds ±{COORD_LIMIT_2D}")));
            }
        }
        Ok(())
    }

    fn offset(self, by: Self) -> Result<Self> {
        let p = Point2 {
            x: Coord::new(self.x.units() + by.x.units()),
            y: Coord::new(self.y.units() + by.y.units()),
        };
        p.validate()?;
        Ok(p)
    }

    fn radius_limit() -> Coord {
        Coord::new(COORD_LIMIT_2D)
    }
}

/// Exact value `whole + sign * sqrt(radicand)`.
#[derive(Clone, Debug)]
pub struct QuadParam {
    whole: i128,
    sign: i8,
    radicand: i128,
}

impl QuadParam {
    pub const ZERO: QuadParam = QuadParam { whole: 0, sign: 0, radicand: 0 };

    pub fn whole(v: i128) -> Self {
        QuadParam { whole: v, sign: 0, radicand: 0 }
    }

    pub fn surd(whole: i128, sign: i8, radicand: i128) -> Self {
        debug_assert!(radicand >= 0);
        if radicand == 0 || sign == 0 {
            return Self::whole(whole);
        }
        QuadParam { whole, sign, radicand }
    }

    /// Floating approximation, for display only.
    pub fn approx(&self) -> f64 {
        self.whole as f64 + self.sign as f64 * (self.radicand as f64).sqrt()
    }
}

impl PartialEq for QuadParam {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadParam {}

impl PartialOrd for QuadParam {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadParam {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.radicand == other.radicand && self.sign == other.sign {
            return self.whole.cmp(&other.whole);
        }
        // sign of (w1 - w2) + s1*sqrt(q1) - s2*sqrt(q2)
        let a = BigInt::from(self.whole) - BigInt::from(other.whole);
        sign_two_roots(
            &a,
            self.sign,
            &BigInt::from(self.radicand),
            -other.sign,
            &BigInt::from(other.radicand),
        )
    }
}

fn sign_i(v: &BigInt) -> Ordering {
    v.sign().cmp(&num_bigint::Sign::NoSign)
}

fn sign_of_i8(s: i8) -> Ordering {
    s.cmp(&0)
}

/// Sign of `b + c * sqrt(q)`.
fn sign_root(b: &BigInt, c: &BigInt, q: &BigInt) -> Ordering {
    let sb = sign_i(b);
    let sc = if sign_i(q) == Ordering::Equal { Ordering::Equal } else { sign_i(c) };
    if sc == Ordering::Equal {
        return sb;
    }
    if sb == Ordering::Equal || sb == sc {
        return sc;
    }
    match (b * b).cmp(&(c * c * q)) {
        Ordering::Greater => sb,
        Ordering::Less => sc,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + s1 * sqrt(q1) + s2 * sqrt(q2)`.
fn sign_two_roots(a: &BigInt, s1: i8, q1: &BigInt, s2: i8, q2: &BigInt) -> Ordering {
    if s2 == 0 {
        return sign_root(a, &BigInt::from(s1), q1);
    }
    if s1 == 0 {
        return sign_root(a, &BigInt::from(s2), q2);
    }
    let sx = sign_root(a, &BigInt::from(s1), q1);
    let sy = sign_of_i8(s2);
    if sx == Ordering::Equal {
        return sy;
    }
    if sx == sy {
        return sx;
    }
    // Compare |a + s1 sqrt(q1)|^2 against q2.
    let b = a * a + q1 - q2;
    let c = a * BigInt::from(2 * s1 as i32);
    match sign_root(&b, &c, q1) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_sign(a: f64) -> Ordering {
        a.partial_cmp(&0.0).unwrap()
    }

    #[test]
    fn quad_param_ordering_matches_floats_on_well_separated_values() {
        let vals = [
            QuadParam::surd(3, 1, 2),
            QuadParam::surd(5, -1, 2),
            QuadParam::surd(4, -1, 3),
            QuadParam::whole(4),
            QuadParam::surd(1, 1, 9),
            QuadParam::surd(-2, 1, 50),
            QuadParam::ZERO,
        ];
        for x in &vals {
            for y in &vals {
                let d = x.approx() - y.approx();
                if d.abs() > 1e-9 {
                    assert_eq!(x.cmp(y), approx_sign(d), "{x:?} vs {y:?}");
                }
            }
        }
        // 1 + sqrt(9) == 4 exactly.
        assert_eq!(QuadParam::surd(1, 1, 9).cmp(&QuadParam::whole(4)), Ordering::Equal);
        assert_eq!(
            QuadParam::surd(0, 1, 2).cmp(&QuadParam::surd(0, -1, 8)),
            Ordering::Greater
        );
        assert_eq!(QuadParam::surd(0, 1, 2).cmp(&QuadParam::surd(0, 1, 18)), Ordering::Less);
        // 3 + sqrt(2) vs 1 + sqrt(18) = 1 + 3 sqrt(2): difference 2 - 2 sqrt(2) < 0
        assert_eq!(QuadParam::surd(3, 1, 2).cmp(&QuadParam::surd(1, 1, 18)), Ordering::Less);
        // 2 + sqrt(2) vs sqrt(8) = 2 sqrt(2): difference 2 - sqrt(2) > 0
        assert_eq!(QuadParam::surd(2, 1, 2).cmp(&QuadParam::surd(0, 1, 8)), Ordering::Greater);
        // 1 + sqrt(8) vs 3 + sqrt(2)... 1 + 2sqrt2 - 3 - sqrt2 = sqrt2 - 2 < 0
        assert_eq!(QuadParam::surd(1, 1, 8).cmp(&QuadParam::surd(3, 1, 2)), Ordering::Less);
        // sqrt(8) - sqrt(2) == sqrt(2)
        assert_eq!(
            sign_two_roots(&BigInt::from(0), 1, &BigInt::from(8), -1, &BigInt::from(2)),
            Ordering::Greater
        );
        assert_eq!(
            sign_two_roots(&BigInt::from(-1), 1, &BigInt::from(4), -1, &BigInt::from(1)),
            Ordering::Equal
        );
    }

    #[test]
    fn one_d_free_interval_is_oriented() {
        let p = Coord::new(3);
        assert_eq!(p.free_interval(Coord::new(0), Coord::new(10), Coord::new(1)), Some((2, 4)));
        assert_eq!(p.free_interval(Coord::new(10), Coord::new(0), Coord::new(1)), Some((6, 8)));
        assert_eq!(p.free_interval(Coord::new(5), Coord::new(10), Coord::new(1)), None);
        assert_eq!(p.free_interval(Coord::new(4), Coord::new(10), Coord::new(1)), Some((0, 0)));
    }

    #[test]
    fn two_d_free_interval_touching() {
        // Segment along x from (0,0) to (4,0); point (2,1) at radius 1 touches at t = 1/2.
        let a = Point2::new(0, 0);
        let b = Point2::new(4, 0);
        let (lo, hi) = Point2::new(2, 1).free_interval(a, b, Coord::new(1)).unwrap();
        assert_eq!(lo, hi);
        assert_eq!(lo, QuadParam::whole(8));
        assert!(Point2::new(2, 2).free_interval(a, b, Coord::new(1)).is_none());
        let (lo, hi) = Point2::new(0, 0).free_interval(a, b, Coord::new(10)).unwrap();
        assert_eq!((lo, hi), (QuadParam::ZERO, QuadParam::whole(16)));
    }

    #[test]
    fn on_segment_checks() {
        assert!(Coord::new(2).on_segment(Coord::new(5), Coord::new(1)));
        assert!(!Coord::new(6).on_segment(Coord::new(5), Coord::new(1)));
        assert!(Point2::new(3, 0).on_segment(Point2::new(0, 0), Point2::new(6, 0)));
        assert!(!Point2::new(7, 0).on_segment(Point2::new(0, 0), Point2::new(6, 0)));
        assert!(!Point2::new(3, 1).on_segment(Point2::new(0, 0), Point2::new(6, 0)));
    }
}
