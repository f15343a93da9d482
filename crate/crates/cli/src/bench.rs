use std::path::PathBuf;
use std::time::{Duration, Instant};

use tsfrechet::oracle::check_contract;
use tsfrechet::{AnnIndex, Decimal, Error, IndexParams, Limits, Scale, Variant};

use crate::input::{budget, check_k, DEFAULT_SEARCH_BUDGET, eps_value, one_d, read_curves};
use crate::{workers, Status};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    inputs: PathBuf,
    #[arg(long)]
    queries: PathBuf,
    #[arg(long)]
    delta: Decimal,
    #[arg(long)]
    eps: Decimal,
    #[arg(long)]
    k: usize,
    /// Comma-separated variant names.
    #[arg(long, value_delimiter = ',', required = true)]
    variants: Vec<Variant>,
    /// Check every answer against an exact scan.
    #[arg(long)]
    verify: bool,
    /// Cap on explored candidate prefixes per curve; 0 removes the cap.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: usize,
}

struct Row {
    variant: Variant,
    build: Duration,
    keys: usize,
    skipped: usize,
    latencies: Vec<Duration>,
    selections: usize,
    probes: usize,
    matches: usize,
    rejected: usize,
    over_budget: usize,
    verified: usize,
    violations: usize,
}

impl Row {
    fn percentile(&self, p: usize) -> Duration {
        if self.latencies.is_empty() {
            return Duration::ZERO;
        }
        self.latencies[(self.latencies.len() - 1) * p / 100]
    }
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    check_k(args.k)?;
    let eps = eps_value(args.eps)?;
    let inputs_file = read_curves(&args.inputs)?;
    let queries_file = read_curves(&args.queries)?;
    let digits = inputs_file.fraction_digits().max(queries_file.fraction_digits());
    let scale = Scale::choose(digits, args.delta, args.eps);
    let inputs = one_d(&inputs_file, &scale, &args.inputs)?;
    let queries = one_d(&queries_file, &scale, &args.queries)?;
    let delta = args.delta.to_units(&scale)?;
    let limits = Limits { search_budget: budget(args.search_budget), workers: workers()? };

    let mut rows = Vec::new();
    for &variant in &args.variants {
        let params = IndexParams::new(delta, eps, args.k, variant)?;
        let mut row = Row {
            variant,
            build: Duration::ZERO,
            keys: 0,
            skipped: 0,
            latencies: Vec::with_capacity(queries.len()),
            selections: 0,
            probes: 0,
            matches: 0,
            rejected: 0,
            over_budget: 0,
            verified: 0,
            violations: 0,
        };
        let start = Instant::now();
        let index = match AnnIndex::build_with(&inputs, params, limits) {
            Ok(ix) => ix,
            Err(Error::BudgetExceeded { limit }) => {
                eprintln!("{variant}: build exceeded the search budget of {limit}");
                row.build = start.elapsed();
                row.over_budget = queries.len();
                rows.push(row);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        row.build = start.elapsed();
        row.keys = index.key_count();
        row.skipped = index.skipped().len();
        for q in &queries {
            let start = Instant::now();
            let result = index.query_with_stats(q, limits.search_budget);
            let took = start.elapsed();
            let (outcome, stats) = match result {
                Ok(r) => r,
                Err(Error::BudgetExceeded { .. }) => {
                    row.over_budget += 1;
                    continue;
                }
                Err(Error::InvalidQuery(_)) => {
                    row.rejected += 1;
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            row.latencies.push(took);
            row.selections += stats.selections;
            row.probes += stats.probes;
            row.matches += usize::from(outcome.id().is_some());
            if args.verify {
                let reported = outcome.id().map(|p| p as usize);
                row.verified += 1;
                let verdict = check_contract(&inputs, q, delta, params.far_radius(), reported)?;
                row.violations += usize::from(verdict.is_some());
            }
        }
        row.latencies.sort_unstable();
        rows.push(row);
    }
    print_report(&rows, inputs.len(), queries.len(), args.verify);
    let violations: usize = rows.iter().map(|r| r.violations).sum();
    Ok(if violations > 0 { Status::Violations } else { Status::Clean })
}

fn micros(d: Duration) -> f64 {
    d.as_secs_f64() * 1e6
}

fn print_report(rows: &[Row], n: usize, queries: usize, verify: bool) {
    println!("inputs={n} queries={queries} verify={verify}");
    for r in rows {
        println!(
            "variant={} build_ms={:.3} keys={} skipped={} answered={} rejected={} over_budget={} matches={} \
             selections={} probes={} p50_us={:.1} p90_us={:.1} max_us={:.1} verified={} violations={}",
            r.variant,
            r.build.as_secs_f64() * 1e3,
            r.keys,
            r.skipped,
            r.latencies.len(),
            r.rejected,
            r.over_budget,
            r.matches,
            r.selections,
            r.probes,
            micros(r.percentile(50)),
            micros(r.percentile(90)),
            micros(r.percentile(100)),
            r.verified,
            r.violations,
        );
    }
    println!();
    println!(
        "{:<26} {:>10} {:>10} {:>8} {:>8} {:>10} {:>10} {:>10}",
        "variant", "build_ms", "keys", "answered", "matches", "p50_us", "p90_us", "violations"
    );
    for r in rows {
        println!(
            "{:<26} {:>10.3} {:>10} {:>8} {:>8} {:>10.1} {:>10.1} {:>10}",
            r.variant.name(),
            r.build.as_secs_f64() * 1e3,
            r.keys,
            r.latencies.len(),
            r.matches,
            micros(r.percentile(50)),
            micros(r.percentile(90)),
            r.violations,
        );
    }
}
