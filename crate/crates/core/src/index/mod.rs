//! Approximate near-neighbor indexes for one-dimensional curves.
//!
//! | variant | stored keys | query | factor |
//! |---|---|---|---|
//! | [`Variant::OnePlusEps`] | all near grid curves | straightenings | 1+ε |
//! | [`Variant::TwoPlusEpsFastQuery`] | all near grid curves | signature, one probe | 2+ε |
//! | [`Variant::TwoPlusEpsSmallSpace`] | grid curves near the signature | straightenings | 2+ε |
//! | [`Variant::TwoPlusEpsLinear`] | the snapped signature | near grid curves | 2+ε |
//! | [`Variant::ThreePlusEps`] | grid curves near the signature | signature, one probe | 3+ε |

mod codec;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::candidates::{keys2_bounds, keys_bounds, scaled, snap_curve, GridKey, GridSpec, KeySearch, SearchBounds};
use crate::coord::{Coord, Rational};
use crate::curve::Curve1;
use crate::error::{Error, Result};
use crate::simplify::{compute_signature, is_straightening};

pub use codec::{FORMAT_VERSION, MAGIC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    OnePlusEps,
    TwoPlusEpsFastQuery,
    TwoPlusEpsSmallSpace,
    TwoPlusEpsLinear,
    ThreePlusEps,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::OnePlusEps,
        Variant::TwoPlusEpsFastQuery,
        Variant::TwoPlusEpsSmallSpace,
        Variant::TwoPlusEpsLinear,
        Variant::ThreePlusEps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::OnePlusEps => "one_plus_eps",
            Variant::TwoPlusEpsFastQuery => "two_plus_eps_fast_query",
            Variant::TwoPlusEpsSmallSpace => "two_plus_eps_small_space",
            Variant::TwoPlusEpsLinear => "two_plus_eps_linear",
            Variant::ThreePlusEps => "three_plus_eps",
        }
    }

    /// Approximation factor `c` for slack `eps`.
    pub fn factor(self, eps: Rational) -> Rational {
        let base = match self {
            Variant::OnePlusEps => 1,
            Variant::ThreePlusEps => 3,
            _ => 2,
        };
        Rational::from_integer(base) + eps
    }

    /// Slack passed to the candidate generators.
    fn inner_eps(self, eps: Rational) -> Rational {
        match self {
            Variant::TwoPlusEpsSmallSpace => eps / 4,
            _ => eps / 2,
        }
    }

    fn code(self) -> u8 {
        match self {
            Variant::OnePlusEps => 1,
            Variant::TwoPlusEpsFastQuery => 2,
            Variant::TwoPlusEpsSmallSpace => 3,
            Variant::TwoPlusEpsLinear => 4,
            Variant::ThreePlusEps => 5,
        }
    }

    fn from_code(code: u8) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.code() == code)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::params(format!("unknown variant {s:?}")))
    }
}

/// Validated build parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexParams {
    delta: Coord,
    eps: Rational,
    k: usize,
    variant: Variant,
}

impl IndexParams {
    pub fn new(delta: Coord, eps: Rational, k: usize, variant: Variant) -> Result<Self> {
        if delta <= Coord::ZERO {
            return Err(Error::params(format!("delta must be positive, got {delta}")));
        }
        if eps <= Rational::from_integer(0) || eps > Rational::from_integer(1) {
            return Err(Error::params(format!("eps must lie in (0, 1], got {eps}")));
        }
        if k < 2 {
            return Err(Error::params(format!("k must be at least 2, got {k}")));
        }
        let params = IndexParams { delta, eps, k, variant };
        params.grid()?;
        scaled(delta, variant.factor(eps), "approximation radius")?;
        Ok(params)
    }

    pub fn delta(&self) -> Coord {
        self.delta
    }

    pub fn eps(&self) -> Rational {
        self.eps
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Grid on which keys are stored and queries snapped.
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(scaled(self.delta, self.variant.inner_eps(self.eps), "grid width")?)
    }

    /// `c * delta`: every reported input is at most this far from the query.
    pub fn far_radius(&self) -> Coord {
        self.delta
            .times(self.variant.factor(self.eps))
            .expect("validated on construction")
    }

    fn build_bounds(&self) -> Result<Option<SearchBounds>> {
        let (d, e, k) = (self.delta, self.variant.inner_eps(self.eps), self.k);
        let int = Rational::from_integer;
        Ok(match self.variant {
            Variant::OnePlusEps | Variant::TwoPlusEpsFastQuery => Some(keys_bounds(d, e, k)?),
            Variant::TwoPlusEpsSmallSpace => Some(keys2_bounds(d, int(22), int(2), e, k)?),
            Variant::ThreePlusEps => Some(keys2_bounds(d, int(2), int(3), e, k)?),
            Variant::TwoPlusEpsLinear => None,
        })
    }
}

/// Answer to a query. The id is a position in the index's input list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryOutcome {
    Match(u32),
    NoMatch,
}

impl QueryOutcome {
    pub fn id(self) -> Option<u32> {
        match self {
            QueryOutcome::Match(id) => Some(id),
            QueryOutcome::NoMatch => None,
        }
    }
}

/// Work done by one query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Vertex selections tested as straightenings.
    pub selections: usize,
    /// Dictionary lookups.
    pub probes: usize,
}

/// Limits for building and querying.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    /// Largest number of candidate prefixes explored for one curve.
    pub search_budget: Option<usize>,
    /// Build threads; 0 or 1 builds on the calling thread.
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnIndex {
    params: IndexParams,
    inputs: Vec<Curve1>,
    labels: Vec<String>,
    dictionary: HashMap<GridKey, u32>,
    /// Inputs whose signature is too long to be near any admissible query.
    skipped: Vec<u32>,
    /// Units per real unit, for text I/O.
    scale: u64,
    /// Every prefix of a stored key; lets near-key queries skip dead subtrees.
    prefixes: HashSet<Vec<i64>>,
}

impl AnnIndex {
    pub fn build(inputs: &[Curve1], params: IndexParams) -> Result<Self> {
        Self::build_with(inputs, params, Limits::default())
    }

    pub fn build_with(inputs: &[Curve1], params: IndexParams, limits: Limits) -> Result<Self> {
        if inputs.len() > u32::MAX as usize {
            return Err(Error::input("too many input curves"));
        }
        for (i, p) in inputs.iter().enumerate() {
            if p.len() < 2 {
                return Err(Error::input(format!("input {i} has fewer than two vertices")));
            }
        }
        let mut index = AnnIndex {
            params,
            inputs: inputs.to_vec(),
            labels: (1..=inputs.len()).map(|i| i.to_string()).collect(),
            dictionary: HashMap::new(),
            skipped: Vec::new(),
            scale: 1,
            prefixes: HashSet::new(),
        };
        let workers = limits.workers.max(1).min(inputs.len().max(1));
        if workers <= 1 {
            for (id, p) in inputs.iter().enumerate() {
                let id = id as u32;
                let mut dict = std::mem::take(&mut index.dictionary);
                let stored = index.keys_for(p, limits.search_budget, &mut |key| {
                    dict.entry(key).or_insert(id);
                })?;
                index.dictionary = dict;
                if !stored {
                    index.skipped.push(id);
                }
            }
        } else {
            index.build_parallel(workers, limits.search_budget)?;
        }
        index.index_prefixes();
        Ok(index)
    }

    pub(crate) fn index_prefixes(&mut self) {
        self.prefixes.clear();
        if self.params.variant != Variant::TwoPlusEpsLinear {
            return;
        }
        for key in self.dictionary.keys() {
            let cells = key.cells();
            for end in 1..=cells.len() {
                self.prefixes.insert(cells[..end].to_vec());
            }
        }
    }

    fn build_parallel(&mut self, workers: usize, budget: Option<usize>) -> Result<()> {
        let chunk = self.inputs.len().div_ceil(workers);
        let this = &*self;
        let per_input: Vec<Result<Option<Vec<GridKey>>>> = std::thread::scope(|s| {
            let handles: Vec<_> = this
                .inputs
                .chunks(chunk)
                .map(|part| {
                    s.spawn(move || {
                        part.iter()
                            .map(|p| {
                                let mut keys = Vec::new();
                                let stored = this.keys_for(p, budget, &mut |k| keys.push(k))?;
                                Ok(stored.then_some(keys))
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("build worker panicked"))
                .collect()
        });
        for (id, keys) in per_input.into_iter().enumerate() {
            match keys? {
                Some(keys) => {
                    for key in keys {
                        self.dictionary.entry(key).or_insert(id as u32);
                    }
                }
                None => self.skipped.push(id as u32),
            }
        }
        Ok(())
    }

    /// Feeds the keys of one input to `store`. Returns false if the input is
    /// skipped.
    fn keys_for(
        &self,
        p: &Curve1,
        budget: Option<usize>,
        store: &mut dyn FnMut(GridKey),
    ) -> Result<bool> {
        let params = &self.params;
        let source = match params.variant {
            Variant::OnePlusEps | Variant::TwoPlusEpsFastQuery => p.clone(),
            _ => {
                let sig = compute_signature(p, params.delta)?;
                if sig.len() > params.k + 2 {
                    return Ok(false);
                }
                sig.curve
            }
        };
        match params.build_bounds()? {
            None => store(snap_curve(&source, params.grid()?)),
            Some(bounds) => {
                KeySearch::new(&source, bounds).with_budget(budget).run(|key| {
                    store(key);
                    ControlFlow::Continue(())
                })?;
            }
        }
        Ok(true)
    }

    pub fn params(&self) -> &IndexParams {
        &self.params
    }

    pub fn inputs(&self) -> &[Curve1] {
        &self.inputs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Replaces the default labels ("1", "2", ...).
    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.inputs.len() {
            return Err(Error::input(format!(
                "{} labels for {} inputs",
                labels.len(),
                self.inputs.len()
            )));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn set_scale(&mut self, scale: u64) {
        self.scale = scale;
    }

    pub fn key_count(&self) -> usize {
        self.dictionary.len()
    }

    pub fn skipped(&self) -> &[u32] {
        &self.skipped
    }

    /// Input id stored under `key`.
    pub fn lookup(&self, key: &GridKey) -> Option<u32> {
        self.dictionary.get(key).copied()
    }

    /// Stored keys in ascending order.
    pub fn sorted_keys(&self) -> Vec<(&GridKey, u32)> {
        let mut keys: Vec<_> = self.dictionary.iter().map(|(k, &v)| (k, v)).collect();
        keys.sort();
        keys
    }

    pub fn query(&self, q: &Curve1) -> Result<QueryOutcome> {
        self.query_with_stats(q, None).map(|(outcome, _)| outcome)
    }

    /// Runs a query, counting selections and probes. `budget` bounds the key
    /// enumeration of the linear-space variant.
    pub fn query_with_stats(
        &self,
        q: &Curve1,
        budget: Option<usize>,
    ) -> Result<(QueryOutcome, QueryStats)> {
        let k = self.params.k;
        if q.len() < 2 || q.len() > k {
            return Err(Error::InvalidQuery(format!(
                "query has {} vertices, expected 2 to {k}",
                q.len()
            )));
        }
        let delta = self.params.delta;
        let grid = self.params.grid()?;
        let mut stats = QueryStats::default();
        let outcome = match self.params.variant {
            Variant::OnePlusEps => self.probe_straightenings(q, delta, grid, &mut stats),
            Variant::TwoPlusEpsSmallSpace => self.probe_straightenings(q, delta * 2, grid, &mut stats),
            Variant::TwoPlusEpsFastQuery => self.probe_signature(q, delta, grid, &mut stats)?,
            Variant::ThreePlusEps => self.probe_signature(q, delta * 2, grid, &mut stats)?,
            Variant::TwoPlusEpsLinear => self.probe_near_keys(q, budget, &mut stats)?,
        };
        Ok((outcome, stats))
    }

    fn probe(&self, key: &GridKey, stats: &mut QueryStats) -> Option<u32> {
        stats.probes += 1;
        self.dictionary.get(key).copied()
    }

    fn probe_straightenings(
        &self,
        q: &Curve1,
        threshold: Coord,
        grid: GridSpec,
        stats: &mut QueryStats,
    ) -> QueryOutcome {
        let v = q.vertices();
        let m = v.len();
        let inner: Vec<usize> = (1..m - 1).collect();
        let mut picked = Vec::with_capacity(m);
        for size in 0..=inner.len() {
            let mut found = None;
            for_each_combination(&inner, size, &mut |combo| {
                stats.selections += 1;
                picked.clear();
                picked.push(0);
                picked.extend_from_slice(combo);
                picked.push(m - 1);
                if is_straightening(v, &picked, threshold) {
                    // snapping is monotone, so snapping before normalizing is the same
                    let cells: Vec<i64> = picked.iter().map(|&i| grid.cell(v[i])).collect();
                    let key = GridKey::from_cells(&cells).expect("selection is non-empty");
                    if let Some(id) = self.probe(&key, stats) {
                        found = Some(id);
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
            if let Some(id) = found {
                return QueryOutcome::Match(id);
            }
        }
        QueryOutcome::NoMatch
    }

    fn probe_signature(
        &self,
        q: &Curve1,
        radius: Coord,
        grid: GridSpec,
        stats: &mut QueryStats,
    ) -> Result<QueryOutcome> {
        let sig = compute_signature(q, radius)?;
        Ok(match self.probe(&snap_curve(&sig.curve, grid), stats) {
            Some(id) => QueryOutcome::Match(id),
            None => QueryOutcome::NoMatch,
        })
    }

    fn probe_near_keys(
        &self,
        q: &Curve1,
        budget: Option<usize>,
        stats: &mut QueryStats,
    ) -> Result<QueryOutcome> {
        let p = &self.params;
        let int = Rational::from_integer;
        let bounds = keys2_bounds(p.delta, int(1), int(2), p.variant.inner_eps(p.eps), p.k + 2)?;
        let mut found = None;
        KeySearch::new(q, bounds).with_budget(budget).with_prefixes(&self.prefixes).run(|key| {
            if let Some(id) = self.probe(&key, stats) {
                found = Some(id);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        Ok(found.map_or(QueryOutcome::NoMatch, QueryOutcome::Match))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        codec::encode(self)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        codec::decode(bytes)
    }
}

fn for_each_combination(
    items: &[usize],
    size: usize,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) {
    fn go(
        items: &[usize],
        size: usize,
        start: usize,
        acc: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if acc.len() == size {
            return visit(acc);
        }
        let need = size - acc.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            acc.push(items[i]);
            let flow = go(items, size, i + 1, acc, visit);
            acc.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    let _ = go(items, size, 0, &mut Vec::with_capacity(size), visit);
}
