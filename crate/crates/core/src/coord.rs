//! Fixed-point scalars.
//!
//! Every coordinate is an integer count of *units*; the real value is
//! `units / scale` for a scale chosen once per dataset. All distance
//! thresholds used by the indexes are integer unit counts too, so every
//! comparison in the crate is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Rational multiplier such as an approximation slack.
pub type Rational = Ratio<i64>;

/// Largest absolute unit value accepted for a one-dimensional coordinate.
pub const COORD_LIMIT: i64 = 1 << 40;

/// Largest absolute unit value accepted for either component of a planar point.
pub const COORD_LIMIT_2D: i64 = 1 << 28;

/// One fixed-point scalar, measured in units.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord(i64);

impl Coord {
    pub const ZERO: Coord = Coord(0);

    /// Wraps a unit count without range checking.
    pub const fn new(units: i64) -> Self {
        Coord(units)
    }

    /// Wraps a unit count, rejecting values outside `±COORD_LIMIT`.
    pub fn checked(units: i64) -> Result<Self> {
        if units.unsigned_abs() > COORD_LIMIT as u64 {
            return Err(Error::Overflow(format!("{units} exceeds ±{COORD_LIMIT}")));
        }
        Ok(Coord(units))
    }

    pub const fn units(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> Coord {
        Coord(self.0.abs())
    }

    pub fn dist(self, other: Coord) -> Coord {
        Coord((self.0 - other.0).abs())
    }

    pub fn within(self, other: Coord, radius: Coord) -> bool {
        (self.0 - other.0).abs() <= radius.0
    }

    /// Exact product with a rational factor, if it is a whole number of units.
    pub fn times(self, factor: Rational) -> Option<Coord> {
        let num = (self.0 as i128).checked_mul(*factor.numer() as i128)?;
        let den = *factor.denom() as i128;
        if num % den != 0 {
            return None;
        }
        let v = i64::try_from(num / den).ok()?;
        Coord::checked(v).ok()
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i32> for Coord {
    fn from(v: i32) -> Self {
        Coord(v as i64)
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, rhs: Coord) -> Coord {
        Coord(self.0 + rhs.0)
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, rhs: Coord) -> Coord {
        Coord(self.0 - rhs.0)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

impl Mul<i64> for Coord {
    type Output = Coord;
    fn mul(self, rhs: i64) -> Coord {
        Coord(self.0 * rhs)
    }
}

/// Closed range of coordinates `[lo, hi]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    lo: Coord,
    hi: Coord,
}

impl Interval {
    pub fn new(lo: Coord, hi: Coord) -> Result<Self> {
        if lo > hi {
            return Err(Error::input(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// The ball `[center - radius, center + radius]`.
    pub fn around(center: Coord, radius: Coord) -> Self {
        debug_assert!(radius >= Coord::ZERO);
        Interval { lo: center - radius, hi: center + radius }
    }

    pub fn lo(&self) -> Coord {
        self.lo
    }

    pub fn hi(&self) -> Coord {
        self.hi
    }

    pub fn contains(&self, x: Coord) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}
