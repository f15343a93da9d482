use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use tsfrechet::{AnnIndex, Decimal, IndexParams, Limits, Scale, Variant};

use crate::input::{budget, check_k, DEFAULT_SEARCH_BUDGET, eps_value, one_d, read_curves};
use crate::{workers, Status};

#[derive(clap::Args)]
pub struct Args {
    /// Input curves, one per line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    delta: Decimal,
    #[arg(long)]
    eps: Decimal,
    /// Largest query complexity.
    #[arg(long)]
    k: usize,
    #[arg(long)]
    variant: Variant,
    #[arg(long)]
    out: PathBuf,
    /// Cap on explored candidate prefixes per curve; 0 removes the cap.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: usize,
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    check_k(args.k)?;
    let eps = eps_value(args.eps)?;
    let file = read_curves(&args.input)?;
    let scale = Scale::choose(file.fraction_digits(), args.delta, args.eps);
    let inputs = one_d(&file, &scale, &args.input)?;
    let delta = args.delta.to_units(&scale)?;
    let params = IndexParams::new(delta, eps, args.k, args.variant)?;
    let limits = Limits { search_budget: budget(args.search_budget), workers: workers()? };

    let start = Instant::now();
    let mut index = AnnIndex::build_with(&inputs, params, limits)?;
    let elapsed = start.elapsed();
    index.set_labels(file.ids())?;
    index.set_scale(scale.get());
    std::fs::write(&args.out, index.to_bytes()).with_context(|| format!("writing {}", args.out.display()))?;

    let longest = inputs.iter().map(|c| c.len()).max().unwrap_or(0);
    println!(
        "n={} m_max={longest} keys={} skipped={} build_ms={:.3}",
        inputs.len(),
        index.key_count(),
        index.skipped().len(),
        elapsed.as_secs_f64() * 1e3
    );
    Ok(Status::Clean)
}
