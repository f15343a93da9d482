use std::path::PathBuf;

use anyhow::bail;
use tsfrechet::oracle::linear_scan;
use tsfrechet::{AnyCurve, Decimal, Scale};

use crate::input::read_curves;
use crate::Status;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    inputs: PathBuf,
    #[arg(long)]
    queries: PathBuf,
    #[arg(long)]
    delta: Decimal,
}

/// Prints `qid NEAR id...` or `qid NONE` per query. Works for planar curves too.
pub fn run(args: Args) -> anyhow::Result<Status> {
    let inputs_file = read_curves(&args.inputs)?;
    let queries_file = read_curves(&args.queries)?;
    if !inputs_file.is_empty() && !queries_file.is_empty() && inputs_file.dim() != queries_file.dim() {
        bail!("inputs have dimension {} but queries have {}", inputs_file.dim(), queries_file.dim());
    }
    let digits = inputs_file.fraction_digits().max(queries_file.fraction_digits());
    let scale = Scale::choose(digits, args.delta, Decimal::from_integer(1));
    let delta = args.delta.to_units(&scale)?;
    let inputs = inputs_file.to_curves(&scale)?;
    let queries = queries_file.to_curves(&scale)?;
    let labels = inputs_file.ids();
    for (qid, q) in queries_file.ids().iter().zip(&queries) {
        let within = match q {
            AnyCurve::One(q) => {
                let set: Vec<_> = inputs.iter().filter_map(|p| p.as_one().cloned()).collect();
                linear_scan(&set, q, delta)?.within
            }
            AnyCurve::Two(q) => {
                let set: Vec<_> = inputs.iter().filter_map(|p| p.as_two().cloned()).collect();
                linear_scan(&set, q, delta)?.within
            }
        };
        let near: Vec<&str> = labels.iter().zip(within).filter(|(_, w)| *w).map(|(l, _)| l.as_str()).collect();
        if near.is_empty() {
            println!("{qid} NONE");
        } else {
            println!("{qid} NEAR {}", near.join(" "));
        }
    }
    Ok(Status::Clean)
}
