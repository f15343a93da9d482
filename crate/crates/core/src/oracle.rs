//! Exhaustive reference searches for cross-checking the indexes and the
//! simplification routines. Only the curve primitives are shared with the
//! code under test.

use crate::coord::Coord;
use crate::curve::{is_normalized, Curve, Curve1};
use crate::error::{Error, Result};
use crate::frechet::frechet_decide;
use crate::point::{Point, Point2};

/// Largest curve accepted by the subset enumerations.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 20;

/// Exact per-input decisions for one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub within: Vec<bool>,
}

impl ScanResult {
    /// Smallest input position within the threshold.
    pub fn nearest_within(&self) -> Option<usize> {
        self.within.iter().position(|&b| b)
    }
}

pub fn linear_scan<P: Point>(inputs: &[Curve<P>], query: &Curve<P>, threshold: Coord) -> Result<ScanResult> {
    let within = inputs
        .iter()
        .map(|p| frechet_decide(p, query, threshold))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult { within })
}

/// How an answer can break the approximate near-neighbor contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractViolation {
    /// The reported input is farther than the approximation allows.
    MatchTooFar { input: usize },
    /// Nothing was reported although this input is within the radius.
    MissedNear { witness: usize },
}

impl ContractViolation {
    pub fn label(&self) -> &'static str {
        match self {
            ContractViolation::MatchTooFar { .. } => "match_exceeds_c",
            ContractViolation::MissedNear { .. } => "missed_near",
        }
    }
}

/// Checks a reported answer against exact decisions at `radius` and
/// `far_radius`. `reported` is a position in `inputs`.
pub fn check_contract<P: Point>(
    inputs: &[Curve<P>],
    query: &Curve<P>,
    radius: Coord,
    far_radius: Coord,
    reported: Option<usize>,
) -> Result<Option<ContractViolation>> {
    match reported {
        Some(id) => {
            let p = inputs
                .get(id)
                .ok_or_else(|| Error::input(format!("reported input {id} does not exist")))?;
            if frechet_decide(p, query, far_radius)? {
                Ok(None)
            } else {
                Ok(Some(ContractViolation::MatchTooFar { input: id }))
            }
        }
        None => {
            for (i, p) in inputs.iter().enumerate() {
                if frechet_decide(p, query, radius)? {
                    return Ok(Some(ContractViolation::MissedNear { witness: i }));
                }
            }
            Ok(None)
        }
    }
}

fn subsets_with_ends(m: usize) -> Result<impl Iterator<Item = Vec<usize>>> {
    if m > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::input(format!(
            "brute force limited to {MAX_BRUTE_FORCE_VERTICES} vertices, got {m}"
        )));
    }
    let inner = m.saturating_sub(2);
    Ok((0u32..(1u32 << inner)).map(move |mask| {
        let mut idx = vec![0];
        idx.extend((0..inner).filter(|b| mask >> b & 1 == 1).map(|b| b + 1));
        if m > 1 {
            idx.push(m - 1);
        }
        idx
    }))
}

fn shortcut_close(p: &[Coord], a: usize, b: usize, delta: Coord) -> Result<bool> {
    let seg = Curve::new(&[p[a], p[b]])?;
    let sub = Curve::new(&p[a..=b])?;
    frechet_decide(&seg, &sub, delta)
}

fn in_range(v: Coord, a: Coord, b: Coord) -> bool {
    a.min(b) <= v && v <= a.max(b)
}

/// Every straightening of `q` at `delta`, as zero-based index lists.
pub fn brute_force_straightenings(q: &Curve1, delta: Coord) -> Result<Vec<Vec<usize>>> {
    let v = q.vertices();
    let mut out = Vec::new();
    for idx in subsets_with_ends(v.len())? {
        let seq: Vec<Coord> = idx.iter().map(|&i| v[i]).collect();
        if !is_normalized(&seq) {
            continue;
        }
        let mut ok = true;
        for w in idx.windows(2) {
            if !(w[0]..=w[1]).all(|t| in_range(v[t], v[w[0]], v[w[1]]))
                || !shortcut_close(v, w[0], w[1], delta)?
            {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(idx);
        }
    }
    Ok(out)
}

/// Every proper signature of `p` at `delta`.
pub fn brute_force_signatures(p: &Curve1, delta: Coord) -> Result<Vec<Vec<usize>>> {
    let v = p.vertices();
    let mut out = Vec::new();
    'subsets: for idx in subsets_with_ends(v.len())? {
        let seq: Vec<Coord> = idx.iter().map(|&i| v[i]).collect();
        if seq.len() < 2 || !is_normalized(&seq) {
            continue;
        }
        let l = seq.len();
        for e in 0..l - 1 {
            let gap = seq[e].dist(seq[e + 1]);
            let need = if e == 0 || e == l - 2 { delta } else { delta * 2 };
            if gap <= need {
                continue 'subsets;
            }
        }
        for s in 1..l - 1 {
            let local = &v[idx[s - 1]..=idx[s + 1]];
            let top = local.iter().copied().max().unwrap_or(seq[s]);
            let bottom = local.iter().copied().min().unwrap_or(seq[s]);
            if seq[s] != top && seq[s] != bottom {
                continue 'subsets;
            }
        }
        for w in idx.windows(2) {
            if !shortcut_close(v, w[0], w[1], delta)? {
                continue 'subsets;
            }
        }
        out.push(idx);
    }
    Ok(out)
}

/// Whether any non-decreasing assignment of `visitor` onto `target` within
/// `radius` exists, by dynamic programming over all assignments.
pub fn visiting_order_exists(visitor: &Curve1, target: &Curve1, radius: Coord) -> bool {
    let t = target.vertices();
    // reach[i]: some valid assignment of the prefix ends at target vertex i
    let mut reach: Vec<bool> = vec![true; t.len()];
    for &u in visitor.vertices() {
        let mut seen = false;
        for i in 0..t.len() {
            seen |= reach[i];
            reach[i] = seen && u.within(t[i], radius);
        }
    }
    reach.iter().any(|&b| b)
}

trait Lattice: Point {
    fn scaled(self, n: i64) -> Self;
    fn lerp(a: Self, b: Self, i: i64, n: i64) -> Self;
    fn dist_sq(a: Self, b: Self) -> i128;
}

impl Lattice for Coord {
    fn scaled(self, n: i64) -> Self {
        self * n
    }
    fn lerp(a: Self, b: Self, i: i64, n: i64) -> Self {
        Coord::new(a.units() * (n - i) + b.units() * i)
    }
    fn dist_sq(a: Self, b: Self) -> i128 {
        let d = (a.units() - b.units()) as i128;
        d * d
    }
}

impl Lattice for Point2 {
    fn scaled(self, n: i64) -> Self {
        Point2 { x: self.x * n, y: self.y * n }
    }
    fn lerp(a: Self, b: Self, i: i64, n: i64) -> Self {
        Point2 { x: Coord::lerp(a.x, b.x, i, n), y: Coord::lerp(a.y, b.y, i, n) }
    }
    fn dist_sq(a: Self, b: Self) -> i128 {
        a.dist_sq(b)
    }
}

fn refine<P: Lattice>(c: &[P], n: i64) -> Vec<P> {
    let mut out = vec![c[0].scaled(n)];
    for w in c.windows(2) {
        out.extend((1..=n).map(|i| P::lerp(w[0], w[1], i, n)));
    }
    out
}

fn discrete_frechet_sq<P: Lattice>(a: &[P], b: &[P]) -> i128 {
    let mut prev = vec![0i128; b.len()];
    let mut cur = vec![0i128; b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let d = P::dist_sq(x, y);
            let best = match (i, j) {
                (0, 0) => 0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d.max(best);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len() - 1]
}

fn isqrt_ceil(v: i128) -> i128 {
    let mut r = (v as f64).sqrt() as i128;
    while r * r < v {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= v {
        r -= 1;
    }
    r
}

fn sandwich<P: Lattice>(a: &[P], b: &[P], radius: Coord, pieces: i64) -> Option<bool> {
    let longest = a
        .windows(2)
        .chain(b.windows(2))
        .map(|w| P::dist_sq(w[0], w[1]))
        .max()
        .unwrap_or(0);
    let slack = isqrt_ceil(longest);
    let d = discrete_frechet_sq(&refine(a, pieces), &refine(b, pieces));
    let r = radius.units() as i128 * pieces as i128;
    if d <= r * r {
        Some(true)
    } else if d > (r + slack) * (r + slack) {
        Some(false)
    } else {
        None
    }
}

/// Decides `d_F(a, b) <= radius` through discrete distances of refined copies
/// with `pieces` samples per segment. Returns `None` when the refinement is
/// too coarse to settle the question.
pub fn refined_decide_1d(a: &Curve1, b: &Curve1, radius: Coord, pieces: i64) -> Option<bool> {
    sandwich(a.vertices(), b.vertices(), radius, pieces)
}

/// Planar counterpart of [`refined_decide_1d`].
pub fn refined_decide_2d(
    a: &Curve<Point2>,
    b: &Curve<Point2>,
    radius: Coord,
    pieces: i64,
) -> Option<bool> {
    sandwich(a.vertices(), b.vertices(), radius, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve2;

    fn c1(v: &[i64]) -> Curve1 {
        Curve1::from_units(v).unwrap()
    }

    #[test]
    fn scan_examples() {
        let inputs = vec![c1(&[0, 4])];
        let r = linear_scan(&inputs, &c1(&[0, 4]), Coord::ZERO).unwrap();
        assert_eq!(r.nearest_within(), Some(0));
        let r = linear_scan(&inputs, &c1(&[100, 104]), Coord::new(1)).unwrap();
        assert_eq!(r.nearest_within(), None);
    }

    #[test]
    fn straightening_enumeration_examples() {
        assert_eq!(brute_force_straightenings(&c1(&[0, 10]), Coord::new(1)).unwrap(), vec![vec![0, 1]]);
        let all = brute_force_straightenings(&c1(&[0, 2, 1, 3]), Coord::new(1)).unwrap();
        assert!(all.contains(&vec![0, 3]));
        assert!(all.contains(&vec![0, 1, 2, 3]));
        let big = Curve1::from_units(&(0..21).map(|i| i * (i % 2 * 2 - 1)).collect::<Vec<_>>()).unwrap();
        assert!(brute_force_straightenings(&big, Coord::new(1)).is_err());
    }

    #[test]
    fn contract_check_cases() {
        let inputs = vec![c1(&[0, 4]), c1(&[10, 20])];
        let q = c1(&[1, 5]);
        let r = Coord::new(1);
        let far = Coord::new(2);
        assert_eq!(check_contract(&inputs, &q, r, far, Some(0)).unwrap(), None);
        assert_eq!(
            check_contract(&inputs, &q, r, far, Some(1)).unwrap(),
            Some(ContractViolation::MatchTooFar { input: 1 })
        );
        assert_eq!(
            check_contract(&inputs, &q, r, far, None).unwrap(),
            Some(ContractViolation::MissedNear { witness: 0 })
        );
    }

    #[test]
    fn refined_decisions_bracket_known_values() {
        let p = c1(&[0, 6, 2, 6]);
        let q = c1(&[0, 6]);
        assert_eq!(refined_decide_1d(&p, &q, Coord::new(3), 8), Some(true));
        assert_eq!(refined_decide_1d(&p, &q, Coord::new(1), 8), Some(false));
        let v = |y| Curve2::from_pairs(&[(0, 0), (3, 0), (3, y), (6, y), (6, 0)]).unwrap();
        assert_eq!(refined_decide_2d(&v(2), &v(1), Coord::new(2), 8), Some(true));
        assert_eq!(refined_decide_2d(&v(2), &v(-1), Coord::new(1), 8), Some(false));
    }

    #[test]
    fn visiting_dp_examples() {
        assert!(!visiting_order_exists(&c1(&[0, 5]), &c1(&[5, 0]), Coord::new(4)));
        assert!(visiting_order_exists(&c1(&[0, 5]), &c1(&[0, 1, 5]), Coord::ZERO));
    }
}
