#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use tsfrechet::oracle::{check_contract, ContractViolation};
use tsfrechet::{compute_signature, AnnIndex, Coord, Curve1, Error, IndexParams, Limits, Rational, Variant};

/// Units per integer coordinate; keeps every grid width whole for eps >= 1/4.
pub const SCALE: i64 = 16;

pub const EPS_CHOICES: [(i64, i64); 3] = [(1, 4), (1, 2), (1, 1)];

pub fn scaled(values: &[i64]) -> Option<Curve1> {
    let units: Vec<i64> = values.iter().map(|x| x * SCALE).collect();
    Curve1::from_units(&units).ok()
}

pub fn random_values(rng: &mut impl Rng, len: usize, span: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-span..=span)).collect()
}

/// A curve that follows a `base_len`-vertex path with jitter of at most
/// `jitter`, padded to at most `len` vertices.
pub fn near_simple(rng: &mut impl Rng, base_len: usize, len: usize, span: i64, jitter: i64) -> Vec<i64> {
    let base = random_values(rng, base_len.max(2), span);
    let mut out = vec![base[0]];
    let extra = len.saturating_sub(base.len());
    let mut slots: Vec<usize> = (0..extra).map(|_| rng.gen_range(0..base.len() - 1)).collect();
    slots.sort_unstable();
    for e in 0..base.len() - 1 {
        for _ in slots.iter().filter(|&&s| s == e) {
            let t = rng.gen_range(0..=8);
            let x = base[e] + (base[e + 1] - base[e]) * t / 8 + rng.gen_range(-jitter..=jitter);
            out.push(x.clamp(-span, span));
        }
        out.push(base[e + 1]);
    }
    out
}

pub fn jitter(rng: &mut impl Rng, values: &[i64], by: i64, span: i64) -> Vec<i64> {
    values.iter().map(|&x| (x + rng.gen_range(-by..=by)).clamp(-span, span)).collect()
}

/// Random instance parameters and curves, all in units of [`SCALE`].
#[derive(Clone, Debug)]
pub struct Instance {
    pub k: usize,
    pub eps: Rational,
    pub delta: i64,
    pub inputs: Vec<Curve1>,
    pub queries: Vec<Curve1>,
}

pub struct Shape {
    pub max_inputs: usize,
    pub max_len: usize,
    pub ks: std::ops::RangeInclusive<usize>,
    pub eps: &'static [(i64, i64)],
    pub span: i64,
    pub queries: usize,
}

pub const FULL_SHAPE: Shape = Shape {
    max_inputs: 50,
    max_len: 12,
    ks: 2..=5,
    eps: &EPS_CHOICES,
    span: 20,
    queries: 8,
};

pub fn random_instance(rng: &mut impl Rng, shape: &Shape) -> Instance {
    let k = rng.gen_range(shape.ks.clone());
    let (num, den) = *shape.eps.choose(rng).expect("non-empty");
    let delta = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=shape.max_inputs);
    let mut inputs = Vec::with_capacity(n);
    let mut raw_inputs = Vec::with_capacity(n);
    while inputs.len() < n {
        let m = rng.gen_range(2..=shape.max_len);
        let v = if rng.gen_bool(0.5) {
            random_values(rng, m, shape.span)
        } else {
            let base = rng.gen_range(2..=k.min(m));
            near_simple(rng, base, m, shape.span, delta)
        };
        if let Some(c) = scaled(&v).filter(|c| c.len() >= 2) {
            raw_inputs.push(v);
            inputs.push(c);
        }
    }
    let mut queries = Vec::with_capacity(shape.queries);
    while queries.len() < shape.queries {
        let v = match rng.gen_range(0..3) {
            0 => {
                let len = rng.gen_range(2..=k);
                random_values(rng, len, shape.span)
            }
            1 => {
                // a vertex subsequence of some input, nudged
                let p = raw_inputs.choose(rng).expect("non-empty");
                let mut idx: Vec<usize> = (1..p.len() - 1).collect();
                idx.shuffle(rng);
                idx.truncate(rng.gen_range(0..=k - 2));
                idx.push(0);
                idx.push(p.len() - 1);
                idx.sort_unstable();
                let picked: Vec<i64> = idx.iter().map(|&i| p[i]).collect();
                jitter(rng, &picked, delta, shape.span)
            }
            _ => {
                // the signature of some input, nudged
                let p = inputs.choose(rng).expect("non-empty");
                let sig = compute_signature(p, Coord::new(delta * SCALE)).expect("valid curve");
                let values: Vec<i64> = sig.curve.units().iter().map(|x| x / SCALE).collect();
                jitter(rng, &values, delta, shape.span)
            }
        };
        if let Some(q) = scaled(&v).filter(|q| (2..=k).contains(&q.len())) {
            queries.push(q);
        }
    }
    Instance { k, eps: Rational::new(num, den), delta, inputs, queries }
}

impl Instance {
    pub fn params(&self, variant: Variant) -> IndexParams {
        IndexParams::new(Coord::new(self.delta * SCALE), self.eps, self.k, variant).expect("valid parameters")
    }
}

#[derive(Debug, Default, Clone)]
pub struct ContractTally {
    pub evaluated: usize,
    pub over_budget: usize,
    pub queries: usize,
    pub matches: usize,
    /// Violations where a near input was missed.
    pub missed_near: usize,
    pub violations: Vec<String>,
}

/// Builds one index and checks every query against the exact oracle.
/// Returns false if the enumeration budget ran out.
pub fn check_instance(
    inst: &Instance,
    variant: Variant,
    budget: Option<usize>,
    tally: &mut ContractTally,
) -> bool {
    let params = inst.params(variant);
    let limits = Limits { search_budget: budget, workers: 1 };
    let index = match AnnIndex::build_with(&inst.inputs, params, limits) {
        Ok(ix) => ix,
        Err(Error::BudgetExceeded { .. }) => {
            tally.over_budget += 1;
            return false;
        }
        Err(e) => panic!("build failed: {e}"),
    };
    let mut answers = Vec::with_capacity(inst.queries.len());
    for q in &inst.queries {
        match index.query_with_stats(q, budget) {
            Ok((outcome, _)) => answers.push(outcome.id()),
            Err(Error::BudgetExceeded { .. }) => {
                tally.over_budget += 1;
                return false;
            }
            Err(e) => panic!("query failed: {e}"),
        }
    }
    tally.evaluated += 1;
    let radius = params.delta();
    for (q, answer) in inst.queries.iter().zip(answers) {
        tally.queries += 1;
        let reported = answer.map(|id| id as usize);
        tally.matches += usize::from(reported.is_some());
        match check_contract(&inst.inputs, q, radius, params.far_radius(), reported).expect("oracle") {
            None => {}
            Some(v) => {
                tally.missed_near += usize::from(matches!(v, ContractViolation::MissedNear { .. }));
                tally.violations.push(describe(variant, inst, q, &v));
            }
        }
    }
    true
}

fn describe(variant: Variant, inst: &Instance, q: &Curve1, v: &ContractViolation) -> String {
    let input = match *v {
        ContractViolation::MatchTooFar { input } => input,
        ContractViolation::MissedNear { witness } => witness,
    };
    format!(
        "{variant} k={} eps={} delta={} q={:?}: {} p={:?}",
        inst.k,
        inst.eps,
        inst.delta * SCALE,
        q.units(),
        v.label(),
        inst.inputs[input].units()
    )
}
