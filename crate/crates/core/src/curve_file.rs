//! Text curve files: one curve per line, `id: x1 x2 ...` or `id: x1,y1 x2,y2 ...`.
//!
//! Blank lines and lines starting with `#` are ignored. Coordinates are
//! decimals with at most six fractional digits and are converted to units
//! with a single power-of-ten based scale.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::coord::{Coord, Rational};
use crate::curve::{AnyCurve, Curve1, Curve2};
use crate::error::{Error, Result};
use crate::point::Point2;

pub const MAX_FRACTION_DIGITS: u32 = 6;

/// An exact decimal `mantissa / 10^digits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: i64,
    digits: u32,
}

impl Decimal {
    pub fn from_integer(value: i64) -> Decimal {
        Decimal { mantissa: value, digits: 0 }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.mantissa, 10i64.pow(self.digits))
    }

    /// Value times `scale`, which must give a whole number.
    pub fn to_units(self, scale: &Scale) -> Result<Coord> {
        let v = Rational::from_integer(scale.units_per_one()) * self.to_rational();
        if !v.is_integer() {
            return Err(Error::input(format!("{self} is not a whole number of units at scale {}", scale.0)));
        }
        Coord::checked(v.to_integer())
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("bad number {s:?}"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        let digits = frac.len() as u32;
        if digits > MAX_FRACTION_DIGITS {
            return Err(Error::input(format!("{s:?} has more than {MAX_FRACTION_DIGITS} fractional digits")));
        }
        let joined = format!("{int}{frac}");
        let mut mantissa: i64 = if joined.is_empty() { 0 } else { joined.parse().map_err(|_| bad())? };
        if neg {
            mantissa = -mantissa;
        }
        Ok(Decimal { mantissa, digits })
    }
}

impl std::fmt::Display for Decimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_ratio(self.to_rational()).expect("decimals are finite"))
    }
}

/// Units per real unit: `4 * 10^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale(u64);

impl Scale {
    /// Picks `p` so coordinates, `delta` and every grid width derived from
    /// `eps * delta` land on whole units.
    pub fn choose(coord_digits: u32, delta: Decimal, eps: Decimal) -> Scale {
        let p = coord_digits.max(delta.digits + eps.digits);
        Scale(4 * 10u64.pow(p))
    }

    pub fn from_units_per_one(units: u64) -> Result<Scale> {
        if units == 0 {
            return Err(Error::params("scale must be positive"));
        }
        Ok(Scale(units))
    }

    pub fn units_per_one(&self) -> i64 {
        self.0 as i64
    }

    pub fn get(&self) -> u64 {
        self.0
    }

    /// Units as an exact decimal string.
    pub fn format(&self, units: Coord) -> Result<String> {
        format_ratio(Rational::new(units.units(), self.units_per_one()))
    }
}

fn format_ratio(v: Rational) -> Result<String> {
    let mut denom = *v.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while denom % 2 == 0 {
        denom /= 2;
        twos += 1;
    }
    while denom % 5 == 0 {
        denom /= 5;
        fives += 1;
    }
    if denom != 1 {
        return Err(Error::input(format!("{v} has no finite decimal form")));
    }
    let digits = twos.max(fives);
    let shifted = v * Rational::from_integer(10i64.pow(digits));
    let m = shifted.to_integer();
    let sign = if m < 0 { "-" } else { "" };
    let m = m.unsigned_abs();
    let p = 10u64.pow(digits);
    let mut out = format!("{sign}{}", m / p);
    if digits > 0 {
        write!(out, ".{:0width$}", m % p, width = digits as usize).expect("string write");
    }
    Ok(out)
}

/// A parsed curve file before conversion to units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    dim: usize,
    entries: Vec<(String, Vec<Decimal>)>,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |msg: String| Error::input(format!("line {}: {msg}", n + 1));
            let (id, body) = line.split_once(':').ok_or_else(|| at("expected `id: coordinates`".into()))?;
            let id = id.trim();
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(at(format!("bad id {id:?}")));
            }
            if !seen.insert(id.to_owned()) {
                return Err(at(format!("duplicate id {id:?}")));
            }
            let mut values = Vec::new();
            let mut line_dim = None;
            for token in body.split_whitespace() {
                let parts: Vec<&str> = token.split(',').collect();
                if *line_dim.get_or_insert(parts.len()) != parts.len() || parts.len() > 2 {
                    return Err(at(format!("mixed or unsupported dimension at {token:?}")));
                }
                for part in parts {
                    values.push(part.parse::<Decimal>().map_err(|e| at(e.to_string()))?);
                }
            }
            let line_dim = line_dim.ok_or_else(|| at("curve has no vertices".into()))?;
            if *dim.get_or_insert(line_dim) != line_dim {
                return Err(at("dimension differs from earlier lines".into()));
            }
            entries.push((id.to_owned(), values));
        }
        Ok(CurveFile { dim: dim.unwrap_or(1), entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.entries.iter().map(|(id, _)| id.clone()).collect()
    }

    pub fn fraction_digits(&self) -> u32 {
        self.entries.iter().flat_map(|(_, v)| v).map(|d| d.digits).max().unwrap_or(0)
    }

    /// The `i`-th curve in units of `scale`.
    pub fn curve(&self, i: usize, scale: &Scale) -> Result<AnyCurve> {
        let (id, values) = &self.entries[i];
        let with_id = |e: Error| Error::input(format!("curve {id}: {e}"));
        let units = values.iter().map(|d| d.to_units(scale)).collect::<Result<Vec<_>>>().map_err(with_id)?;
        match self.dim {
            1 => Curve1::new(&units).map(AnyCurve::from).map_err(with_id),
            _ => {
                let pts: Vec<Point2> = units.chunks(2).map(|c| Point2::new(c[0].units(), c[1].units())).collect();
                Curve2::new(&pts).map(AnyCurve::from).map_err(with_id)
            }
        }
    }

    pub fn to_curves(&self, scale: &Scale) -> Result<Vec<AnyCurve>> {
        (0..self.entries.len()).map(|i| self.curve(i, scale)).collect()
    }

    /// One-dimensional curves, or an error naming the dimension.
    pub fn to_curves_1d(&self, scale: &Scale) -> Result<Vec<Curve1>> {
        if self.dim != 1 {
            return Err(Error::input(format!("expected one-dimensional curves, found dimension {}", self.dim)));
        }
        Ok(self
            .to_curves(scale)?
            .into_iter()
            .map(|c| c.as_one().expect("dimension checked").clone())
            .collect())
    }
}

/// Formats one curve line at `scale`.
pub fn format_line(id: &str, curve: &AnyCurve, scale: &Scale) -> Result<String> {
    let mut out = format!("{id}:");
    match curve {
        AnyCurve::One(c) => {
            for &x in c.vertices() {
                write!(out, " {}", scale.format(x)?).expect("string write");
            }
        }
        AnyCurve::Two(c) => {
            for p in c.vertices() {
                write!(out, " {},{}", scale.format(p.x)?, scale.format(p.y)?).expect("string write");
            }
        }
    }
    Ok(out)
}
