//! Order sequences, grid snapping and candidate key enumeration.
//!
//! [`generate_candidates`] is the literal product construction and is only
//! practical for small radii. The key generators produce the same filtered
//! sets through [`KeySearch`], a depth-first walk over normalized grid curves
//! that carries the free-space frontier against the input curve and prunes a
//! branch as soon as it cannot stay within the distance bound.

use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use crate::coord::{Coord, Interval, Rational};
use crate::curve::{normalize, Curve, Curve1};
use crate::error::{Error, Result};
use crate::frechet::Frontier;

/// The lattice `{ i * width }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    width: Coord,
}

impl GridSpec {
    pub fn new(width: Coord) -> Result<Self> {
        if width <= Coord::ZERO {
            return Err(Error::params(format!("grid width must be positive, got {width}")));
        }
        Ok(GridSpec { width })
    }

    pub fn width(&self) -> Coord {
        self.width
    }

    /// Index of the cell containing `x`, rounding down.
    pub fn cell(&self, x: Coord) -> i64 {
        x.units().div_euclid(self.width.units())
    }

    pub fn point(&self, cell: i64) -> Coord {
        Coord::new(cell * self.width.units())
    }

    /// Cells whose grid point lies in `range`.
    pub fn cells_in(&self, range: Interval) -> std::ops::RangeInclusive<i64> {
        let w = self.width.units();
        let lo = -((-range.lo().units()).div_euclid(w));
        let hi = range.hi().units().div_euclid(w);
        lo..=hi
    }
}

/// Non-decreasing vertex indices `i_1 = 0 <= ... <= i_l = m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderSeq(pub Vec<usize>);

/// Dictionary key: the grid cells of a normalized snapped curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridKey(Vec<i64>);

impl GridKey {
    /// Wraps cells, normalizing them as a curve.
    pub fn from_cells(cells: &[i64]) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::input("empty grid key"));
        }
        let pts: Vec<Coord> = cells.iter().map(|&c| Coord::new(c)).collect();
        Ok(GridKey(normalize(&pts).into_iter().map(Coord::units).collect()))
    }

    pub fn cells(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The grid curve this key stands for.
    pub fn to_curve(&self, grid: GridSpec) -> Result<Curve1> {
        let pts: Vec<Coord> = self.0.iter().map(|&c| grid.point(c)).collect();
        Curve::new(&pts)
    }
}

/// Every order sequence of length 2 to `k` over `m` vertices, shortest first.
pub fn generate_orders(m: usize, k: usize) -> Result<Vec<OrderSeq>> {
    if m < 2 || k < 2 {
        return Err(Error::input(format!("need m >= 2 and k >= 2, got m={m} k={k}")));
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(k);
    for len in 2..=k {
        seq.clear();
        seq.push(0);
        fill_orders(m, len, &mut seq, &mut out);
    }
    Ok(out)
}

fn fill_orders(m: usize, len: usize, seq: &mut Vec<usize>, out: &mut Vec<OrderSeq>) {
    if seq.len() == len - 1 {
        seq.push(m - 1);
        out.push(OrderSeq(seq.clone()));
        seq.pop();
        return;
    }
    let from = *seq.last().unwrap_or(&0);
    for i in from..m {
        seq.push(i);
        fill_orders(m, len, seq, out);
        seq.pop();
    }
}

/// `factor * delta` as an exact unit count.
pub(crate) fn scaled(delta: Coord, factor: Rational, what: &str) -> Result<Coord> {
    delta.times(factor).ok_or_else(|| {
        Error::params(format!("{what} = {factor} * {delta} is not a whole number of units"))
    })
}

/// Literal product construction: every normalized curve through grid points
/// near a sequence of visited vertices. Exponential in `k`; sorted output.
pub fn generate_candidates(
    p: &Curve1,
    delta: Coord,
    radius: Rational,
    eps: Rational,
    k: usize,
) -> Result<Vec<Curve1>> {
    let grid = GridSpec::new(scaled(delta, eps, "grid width")?)?;
    let reach = scaled(delta, radius, "candidate radius")?;
    let v = p.vertices();
    let orders = if v.len() == 1 {
        // A single vertex is visited by every sequence position.
        (2..=k.max(2)).map(|len| OrderSeq(vec![0; len])).collect()
    } else {
        generate_orders(v.len(), k)?
    };
    let mut keys = BTreeSet::new();
    let mut cells = Vec::new();
    for order in &orders {
        let ranges: Vec<Vec<i64>> = order
            .0
            .iter()
            .map(|&i| grid.cells_in(Interval::around(v[i], reach)).collect())
            .collect();
        product(&ranges, &mut cells, &mut |seq| {
            keys.insert(GridKey::from_cells(seq).expect("non-empty"));
        });
    }
    keys.iter().map(|key| key.to_curve(grid)).collect()
}

fn product(ranges: &[Vec<i64>], acc: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if acc.len() == ranges.len() {
        emit(acc);
        return;
    }
    for &c in &ranges[acc.len()] {
        acc.push(c);
        product(ranges, acc, emit);
        acc.pop();
    }
}

/// Bounds for a filtered candidate enumeration, all in units.
#[derive(Clone, Copy, Debug)]
pub struct SearchBounds {
    /// Grid spacing of candidate vertices.
    pub grid: GridSpec,
    /// Visiting radius around input vertices.
    pub reach: Coord,
    /// Largest number of candidate vertices.
    pub max_vertices: usize,
    /// Fréchet bound between candidate and input.
    pub close: Coord,
    /// Optional bound on both endpoint gaps.
    pub ends: Option<Coord>,
}

/// Why an enumeration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchEnd {
    Exhausted,
    Stopped,
}

/// Enumerates, without repetition, the grid curves that the product
/// construction would produce and that pass the distance filters.
pub struct KeySearch<'a> {
    input: &'a [Coord],
    bounds: SearchBounds,
    /// Largest number of explored prefixes before giving up.
    budget: Option<usize>,
    visited: usize,
    /// `swings[i]`: alternating moves longer than `2 * close` within `input[i..]`.
    swings: Vec<usize>,
    /// Only paths in this set are explored.
    prefixes: Option<&'a HashSet<Vec<i64>>>,
}

impl<'a> KeySearch<'a> {
    pub fn new(input: &'a Curve1, bounds: SearchBounds) -> Self {
        let v = input.vertices();
        let swings = (0..=v.len()).map(|i| count_swings(&v[i.min(v.len())..], bounds.close * 2)).collect();
        KeySearch { input: v, bounds, budget: None, visited: 0, swings, prefixes: None }
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    /// Skips every path that is not in `prefixes`. Keys outside the set are
    /// then never emitted; the order of the others is unchanged.
    pub fn with_prefixes(mut self, prefixes: &'a HashSet<Vec<i64>>) -> Self {
        self.prefixes = Some(prefixes);
        self
    }

    fn admits(&self, path: &[i64]) -> bool {
        self.prefixes.is_none_or(|set| set.contains(path))
    }

    /// Number of prefixes explored so far.
    pub fn visited(&self) -> usize {
        self.visited
    }

    /// Calls `emit` once per key, in a fixed order.
    pub fn run(
        &mut self,
        mut emit: impl FnMut(GridKey) -> ControlFlow<()>,
    ) -> Result<SearchEnd> {
        let p = self.input;
        let b = self.bounds;
        let first = p[0];
        let mut lim = b.reach.min(b.close);
        if let Some(e) = b.ends {
            lim = lim.min(e);
        }
        if lim < Coord::ZERO || b.max_vertices == 0 {
            return Ok(SearchEnd::Exhausted);
        }
        let mut path = Vec::with_capacity(b.max_vertices);
        for cell in b.grid.cells_in(Interval::around(first, lim)) {
            let x = b.grid.point(cell);
            self.tick()?;
            let mut f = Frontier::new(p, b.close);
            f.push(x);
            if !f.alive() {
                continue;
            }
            path.push(cell);
            if !self.admits(&path) {
                path.pop();
                continue;
            }
            let flow = self.finish_or_extend(&mut path, &f, 0, 0, &mut emit)?;
            path.pop();
            if flow.is_break() {
                return Ok(SearchEnd::Stopped);
            }
        }
        Ok(SearchEnd::Exhausted)
    }

    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        match self.budget {
            Some(limit) if self.visited > limit => Err(Error::BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }

    fn is_final(&self, y: Coord, f: &Frontier<'_, Coord>) -> bool {
        let last = self.input[self.input.len() - 1];
        y.within(last, self.bounds.reach)
            && self.bounds.ends.is_none_or(|e| y.within(last, e))
            && f.reaches_end()
    }

    /// Emits the current path if it is a complete candidate, then extends it.
    /// `at` is the input vertex visited by the path's last vertex and `dir`
    /// the direction of its last edge (0 for a single vertex).
    fn finish_or_extend(
        &mut self,
        path: &mut Vec<i64>,
        f: &Frontier<'_, Coord>,
        at: usize,
        dir: i64,
        emit: &mut impl FnMut(GridKey) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let y = self.bounds.grid.point(*path.last().expect("non-empty path"));
        if self.is_final(y, f) && emit(GridKey(path.clone())).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        if path.len() >= self.bounds.max_vertices {
            return Ok(ControlFlow::Continue(()));
        }
        // Each remaining swing needs its own new vertex.
        let rest = f.after_latest().map_or(0, |i| self.swings[i]);
        if rest > self.bounds.max_vertices - path.len() {
            return Ok(ControlFlow::Continue(()));
        }
        // A vertex that is extended is interior, except the first one which
        // stays pinned to the input's first vertex.
        let from = at;
        let p = self.input;
        let tail = &p[from..];
        let hull_lo = tail.iter().copied().min().unwrap_or(y) - self.bounds.reach;
        let hull_hi = tail.iter().copied().max().unwrap_or(y) + self.bounds.reach;
        let dirs: &[i64] = match dir {
            0 => &[1, -1],
            1 => &[-1],
            _ => &[1],
        };
        let cell = *path.last().expect("non-empty path");
        for &d in dirs {
            let mut step = 1;
            loop {
                let next_cell = cell + d * step;
                step += 1;
                let z = self.bounds.grid.point(next_cell);
                if z < hull_lo || z > hull_hi {
                    break;
                }
                self.tick()?;
                let g = f.pushed(z);
                if !g.alive() {
                    break;
                }
                let visit = if path.len() + 1 < self.bounds.max_vertices {
                    p[from..].iter().position(|&v| v.within(z, self.bounds.reach)).map(|i| i + from)
                } else {
                    None
                };
                let can_finish = z.within(p[p.len() - 1], self.bounds.reach);
                if visit.is_none() && !can_finish {
                    continue;
                }
                path.push(next_cell);
                if !self.admits(path) {
                    path.pop();
                    continue;
                }
                let flow = match visit {
                    Some(i) => self.finish_or_extend(path, &g, i, d, emit)?,
                    None => {
                        if self.is_final(z, &g) && emit(GridKey(path.clone())).is_break() {
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    }
                };
                path.pop();
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Largest number of alternating moves, each longer than `gap`, along `seq`.
fn count_swings(seq: &[Coord], gap: Coord) -> usize {
    let Some(&first) = seq.first() else { return 0 };
    let (mut lo, mut hi) = (first, first);
    let mut dir = 0i8;
    let mut ext = first;
    let mut count = 0;
    for &x in &seq[1..] {
        match dir {
            0 => {
                if x - lo > gap {
                    (dir, ext, count) = (1, x, 1);
                } else if hi - x > gap {
                    (dir, ext, count) = (-1, x, 1);
                } else {
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
            }
            1 if x > ext => ext = x,
            1 if ext - x > gap => (dir, ext, count) = (-1, x, count + 1),
            -1 if x < ext => ext = x,
            -1 if x - ext > gap => (dir, ext, count) = (1, x, count + 1),
            _ => {}
        }
    }
    count
}

fn collect_keys(p: &Curve1, bounds: SearchBounds) -> Result<Vec<Curve1>> {
    let mut keys = BTreeSet::new();
    KeySearch::new(p, bounds).run(|k| {
        keys.insert(k);
        ControlFlow::Continue(())
    })?;
    keys.iter().map(|k| k.to_curve(bounds.grid)).collect()
}

/// Bounds used by [`generate_keys`].
pub fn keys_bounds(delta: Coord, eps: Rational, k: usize) -> Result<SearchBounds> {
    let width = scaled(delta, eps, "grid width")?;
    Ok(SearchBounds {
        grid: GridSpec::new(width)?,
        reach: delta * 11 + width,
        max_vertices: k,
        close: delta + width,
        ends: None,
    })
}

/// Bounds used by [`generate_keys2`].
pub fn keys2_bounds(
    delta: Coord,
    reach: Rational,
    close: Rational,
    eps: Rational,
    k: usize,
) -> Result<SearchBounds> {
    let width = scaled(delta, eps, "grid width")?;
    Ok(SearchBounds {
        grid: GridSpec::new(width)?,
        reach: scaled(delta, reach, "visiting radius")? + width,
        max_vertices: k,
        close: scaled(delta, close, "distance bound")? + width,
        ends: Some(delta + width),
    })
}

/// Candidates at radius `(11 + eps) * delta` within `(1 + eps) * delta` of `p`.
pub fn generate_keys(p: &Curve1, delta: Coord, eps: Rational, k: usize) -> Result<Vec<Curve1>> {
    collect_keys(p, keys_bounds(delta, eps, k)?)
}

/// Candidates at radius `(reach + eps) * delta` within `(close + eps) * delta`
/// of `p` whose endpoints are within `(1 + eps) * delta` of those of `p`.
pub fn generate_keys2(
    p: &Curve1,
    delta: Coord,
    reach: Rational,
    close: Rational,
    eps: Rational,
    k: usize,
) -> Result<Vec<Curve1>> {
    collect_keys(p, keys2_bounds(delta, reach, close, eps, k)?)
}

/// Snaps every vertex down to the grid and normalizes the result.
pub fn snap_curve(q: &Curve1, grid: GridSpec) -> GridKey {
    let cells: Vec<i64> = q.vertices().iter().map(|&x| grid.cell(x)).collect();
    GridKey::from_cells(&cells).expect("curves are non-empty")
}
