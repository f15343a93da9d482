//! Seeded workloads shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsfrechet::{Curve1, Curve2, Point2};

/// `count` random 1D curves with `len` vertices in `[-span, span]` units,
/// skipping draws that normalize below two vertices.
pub fn random_curves(seed: u64, count: usize, len: usize, span: i64) -> Vec<Curve1> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let units: Vec<i64> = (0..len).map(|_| rng.gen_range(-span..=span)).collect();
        if let Ok(c) = Curve1::from_units(&units) {
            if c.len() >= 2 {
                out.push(c);
            }
        }
    }
    out
}

/// A random walk and a copy shifted by `offset` in y.
pub fn planar_pair(seed: u64, len: usize, offset: i64) -> (Curve2, Curve2) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut x, mut y) = (0i64, 0i64);
    let mut a = Vec::with_capacity(len);
    for _ in 0..len {
        x += rng.gen_range(1..=8);
        y += rng.gen_range(-8..=8);
        a.push(Point2::new(x, y));
    }
    let b: Vec<Point2> = a.iter().map(|p| Point2::new(p.x.units(), p.y.units() + offset)).collect();
    (Curve2::new(&a).expect("walk"), Curve2::new(&b).expect("walk"))
}

/// Query curves copied from `inputs` with vertices dropped down to `k`.
pub fn sub_queries(inputs: &[Curve1], k: usize) -> Vec<Curve1> {
    inputs
        .iter()
        .filter_map(|c| {
            let v = c.vertices();
            let step = v.len().div_ceil(k).max(1);
            let mut picked: Vec<_> = v.iter().step_by(step).copied().collect();
            picked.truncate(k - 1);
            picked.push(*v.last().expect("non-empty"));
            Curve1::new(&picked).ok().filter(|q| q.len() >= 2)
        })
        .collect()
}
