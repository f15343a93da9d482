//! Vertex-restricted simplifications of one-dimensional curves.
//!
//! Indices are zero-based positions into the parent curve's vertices.

use crate::coord::Coord;
use crate::curve::{is_normalized, Curve, Curve1};
use crate::error::{Error, Result};
use crate::frechet::decide_slices;

/// Signature of a curve: its large-scale extrema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub delta: Coord,
    pub indices: Vec<usize>,
    pub curve: Curve1,
    /// Set when no proper signature exists because the whole curve is
    /// within `delta` of its start. The result is then the single shortcut
    /// from first to last vertex, which is still within `delta` of the parent.
    pub relaxed: bool,
}

impl Signature {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// A simplification whose shortcuts never leave the range of the skipped part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightening {
    pub delta: Coord,
    pub indices: Vec<usize>,
    pub curve: Curve1,
}

/// Assignment of each vertex of one curve to a vertex of another, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisitingOrder {
    pub indices: Vec<usize>,
    pub radius: Coord,
}

/// Computes a signature in one pass over the vertices.
///
/// Ties between equal extrema go to the earliest vertex.
pub fn compute_signature(curve: &Curve1, delta: Coord) -> Result<Signature> {
    if delta <= Coord::ZERO {
        return Err(Error::input(format!("signature radius must be positive, got {delta}")));
    }
    let p = curve.vertices();
    let m = p.len();
    if m == 1 {
        return Ok(Signature { delta, indices: vec![0], curve: curve.clone(), relaxed: false });
    }
    let start = p[0];
    let exit = p.iter().position(|&v| !v.within(start, delta));
    let indices = match exit {
        None => vec![0, m - 1],
        Some(e) => {
            let mut rising = p[e] > start;
            let mut out = vec![0];
            let mut cand = 0;
            for (j, &v) in p.iter().enumerate().skip(1) {
                let better = if rising { v > p[cand] } else { v < p[cand] };
                if better {
                    cand = j;
                } else if p[cand].dist(v) > delta * 2 {
                    out.push(cand);
                    rising = !rising;
                    cand = j;
                }
            }
            if cand != m - 1 && p[cand].dist(p[m - 1]) > delta {
                out.push(cand);
            }
            out.push(m - 1);
            out
        }
    };
    let relaxed = indices.len() == 2 && p[0].within(p[m - 1], delta);
    let raw: Vec<Coord> = indices.iter().map(|&i| p[i]).collect();
    let sig = Signature { delta, curve: Curve::new(&raw)?, indices, relaxed };
    debug_assert!(
        sig.relaxed || check_signature(curve, &sig.indices, delta).unwrap_or(false),
        "signature of {curve:?} at {delta}: {:?}",
        sig.indices
    );
    Ok(sig)
}

fn validate_indices(m: usize, indices: &[usize]) -> Result<()> {
    let ok_ends = match indices {
        [only] => m == 1 && *only == 0,
        [first, .., last] => *first == 0 && *last == m - 1,
        [] => false,
    };
    if !ok_ends {
        return Err(Error::input(format!(
            "index list must start at 0 and end at {}: {indices:?}",
            m.saturating_sub(1)
        )));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input(format!("index list must be strictly increasing: {indices:?}")));
    }
    Ok(())
}

/// Induced vertex sequence, non-degenerate, with every shortcut within
/// `delta` of the part of `curve` it replaces.
fn is_simplification(p: &[Coord], indices: &[usize], delta: Coord) -> bool {
    let induced: Vec<Coord> = indices.iter().map(|&i| p[i]).collect();
    if !is_normalized(&induced) {
        return false;
    }
    indices
        .windows(2)
        .all(|w| decide_slices(&[p[w[0]], p[w[1]]], &p[w[0]..=w[1]], delta))
}

/// True if `indices` select a valid signature of `curve` at `delta`.
pub fn check_signature(curve: &Curve1, indices: &[usize], delta: Coord) -> Result<bool> {
    let p = curve.vertices();
    validate_indices(p.len(), indices)?;
    if indices.len() == 1 {
        return Ok(true);
    }
    if !is_simplification(p, indices, delta) {
        return Ok(false);
    }
    let l = indices.len();
    for (e, w) in indices.windows(2).enumerate() {
        let len = p[w[0]].dist(p[w[1]]);
        let outer = e == 0 || e == l - 2;
        let need = if outer { delta } else { delta * 2 };
        if len <= need {
            return Ok(false);
        }
    }
    for s in 1..l - 1 {
        let v = p[indices[s]];
        let span = &p[indices[s - 1]..=indices[s + 1]];
        let is_max = v > p[indices[s - 1]];
        let ok = if is_max { span.iter().all(|&x| x <= v) } else { span.iter().all(|&x| x >= v) };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True if `indices` select a straightening of `curve` at `delta`.
pub fn check_straightening(curve: &Curve1, indices: &[usize], delta: Coord) -> Result<bool> {
    let q = curve.vertices();
    validate_indices(q.len(), indices)?;
    Ok(is_straightening(q, indices, delta))
}

pub(crate) fn is_straightening(q: &[Coord], indices: &[usize], delta: Coord) -> bool {
    let in_range = indices.windows(2).all(|w| {
        let (lo, hi) = (q[w[0]].min(q[w[1]]), q[w[0]].max(q[w[1]]));
        q[w[0]..=w[1]].iter().all(|&x| lo <= x && x <= hi)
    });
    in_range && is_simplification(q, indices, delta)
}

/// Wraps a checked index list as a [`Straightening`].
pub fn straightening(curve: &Curve1, indices: &[usize], delta: Coord) -> Result<Option<Straightening>> {
    if !check_straightening(curve, indices, delta)? {
        return Ok(None);
    }
    Ok(Some(Straightening {
        delta,
        indices: indices.to_vec(),
        curve: curve.induced(indices)?,
    }))
}

/// Leftmost visiting order of `visitor` on `target`, if any exists.
pub fn find_visiting_order(visitor: &Curve1, target: &Curve1, radius: Coord) -> Option<VisitingOrder> {
    let target = target.vertices();
    let mut at = 0;
    let mut indices = Vec::with_capacity(visitor.len());
    for &u in visitor.vertices() {
        at += target[at..].iter().position(|&v| v.within(u, radius))?;
        indices.push(at);
    }
    Some(VisitingOrder { indices, radius })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1(v: &[i64]) -> Curve1 {
        Curve1::from_units(v).unwrap()
    }

    fn sig(v: &[i64], d: i64) -> Signature {
        compute_signature(&c1(v), Coord::new(d)).unwrap()
    }

    #[test]
    fn signature_examples() {
        let s = sig(&[-1, -2, 2], 1);
        assert_eq!(s.indices, vec![0, 2]);
        assert_eq!(s.curve.units(), vec![-1, 2]);
        assert!(!s.relaxed);
        assert_eq!(sig(&[0, 10], 1).indices, vec![0, 1]);
        assert_eq!(sig(&[0, 6, 2, 6], 1).indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn signature_keeps_short_excursion_at_the_end() {
        // scaled by 2: <0, -1.5, 0> at radius 1
        let s = sig(&[0, -3, 0], 2);
        assert_eq!(s.indices, vec![0, 1, 2]);
        assert!(!s.relaxed);
    }

    #[test]
    fn near_constant_curve_is_relaxed() {
        let s = sig(&[0, 1, -1, 1], 1);
        assert!(s.relaxed);
        assert_eq!(s.indices, vec![0, 3]);
        let s = sig(&[0, 1, 0], 1);
        assert!(s.relaxed);
        assert_eq!(s.curve.units(), vec![0]);
    }

    #[test]
    fn signature_ties_keep_earliest() {
        let s = sig(&[0, 10, 8, 10, 0], 2);
        assert_eq!(s.indices, vec![0, 1, 4]);
    }

    #[test]
    fn check_signature_examples() {
        let p = c1(&[-2, -4, 4]);
        assert!(check_signature(&p, &[0, 2], Coord::new(2)).unwrap());
        assert!(!check_signature(&p, &[0, 2], Coord::new(1)).unwrap());
        assert!(check_signature(&c1(&[0, 10]), &[0, 1], Coord::new(5)).unwrap());
        assert!(matches!(
            check_signature(&p, &[1, 2], Coord::new(1)),
            Err(Error::InvalidInput(_))
        ));
        assert!(check_signature(&p, &[0, 0, 2], Coord::new(1)).is_err());
    }

    #[test]
    fn check_straightening_examples() {
        let q = c1(&[0, 2, 1, 3]);
        assert!(check_straightening(&q, &[0, 3], Coord::new(1)).unwrap());
        assert!(check_straightening(&q, &[0, 1, 2, 3], Coord::new(1)).unwrap());
        assert!(!check_straightening(&c1(&[0, 6, 2, 6]), &[0, 3], Coord::new(1)).unwrap());
        assert!(check_straightening(&q, &[0, 2], Coord::new(1)).is_err());
        let s = straightening(&q, &[0, 3], Coord::new(1)).unwrap().unwrap();
        assert_eq!(s.curve.units(), vec![0, 3]);
    }

    #[test]
    fn visiting_order_examples() {
        // <0,1,5> normalizes to <0,5>
        let r = find_visiting_order(&c1(&[0, 5]), &c1(&[0, 1, 5]), Coord::new(0)).unwrap();
        assert_eq!(r.indices, vec![0, 1]);
        let r = find_visiting_order(&c1(&[0, 5]), &c1(&[0, 3, 1, 5]), Coord::new(0)).unwrap();
        assert_eq!(r.indices, vec![0, 3]);
        assert!(find_visiting_order(&c1(&[0, 5]), &c1(&[5, 0]), Coord::new(4)).is_none());
        // 2 is within 1 of the second target vertex, so the leftmost order stops there.
        let r = find_visiting_order(&c1(&[-1, 2]), &c1(&[0, 1, -1, 2]), Coord::new(1)).unwrap();
        assert_eq!(r.indices, vec![0, 1]);
    }
}
