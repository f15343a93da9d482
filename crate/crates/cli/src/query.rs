use std::path::PathBuf;

use anyhow::Context;
use tsfrechet::oracle::check_contract;
use tsfrechet::{AnnIndex, Curve1, CurveFile, QueryOutcome, Scale};

use crate::input::read_curves;
use crate::{workers, Status};

#[derive(clap::Args)]
pub struct Args {
    /// Index written by `build`.
    #[arg(long)]
    index: PathBuf,
    /// Query curves, one per line.
    #[arg(long)]
    queries: PathBuf,
    /// Check each answer against an exact scan of the inputs.
    #[arg(long)]
    verify: bool,
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    let bytes = std::fs::read(&args.index).with_context(|| format!("reading {}", args.index.display()))?;
    let index = AnnIndex::from_bytes(&bytes).with_context(|| format!("loading {}", args.index.display()))?;
    let file = read_curves(&args.queries)?;
    let scale = Scale::from_units_per_one(index.scale())?;
    let lines = answer_all(&index, &file, &scale, args.verify, workers()?);
    let mut status = Status::Clean;
    for line in &lines {
        println!("{}", line.text);
        status = worse(status, line.status);
    }
    Ok(status)
}

pub struct Line {
    pub text: String,
    pub status: Status,
}

fn worse(a: Status, b: Status) -> Status {
    match (a, b) {
        (Status::Violations, _) | (_, Status::Violations) => Status::Violations,
        (Status::LineErrors, _) | (_, Status::LineErrors) => Status::LineErrors,
        _ => Status::Clean,
    }
}

/// Answers every query, split across `workers` threads; lines come back in
/// file order.
pub fn answer_all(index: &AnnIndex, file: &CurveFile, scale: &Scale, verify: bool, workers: usize) -> Vec<Line> {
    let ids = &file.ids();
    let one = |i: usize| answer(index, file, i, &ids[i], scale, verify);
    if workers <= 1 || ids.len() < 2 {
        return (0..ids.len()).map(one).collect();
    }
    let chunk = ids.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..ids.len())
            .step_by(chunk)
            .map(|lo| {
                let one = &one;
                s.spawn(move || (lo..(lo + chunk).min(ids.len())).map(one).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("query worker panicked")).collect()
    })
}

fn answer(index: &AnnIndex, file: &CurveFile, i: usize, id: &str, scale: &Scale, verify: bool) -> Line {
    let error = |msg: String| Line { text: format!("{id} ERROR {msg}"), status: Status::LineErrors };
    let q: Curve1 = match file.curve(i, scale) {
        Ok(c) => match c.as_one() {
            Some(c) => c.clone(),
            None => return error("query is not one-dimensional".into()),
        },
        Err(e) => return error(e.to_string()),
    };
    let outcome = match index.query(&q) {
        Ok(o) => o,
        Err(e) => return error(e.to_string()),
    };
    let mut text = match outcome {
        QueryOutcome::Match(pid) => format!("{id} MATCH {}", index.labels()[pid as usize]),
        QueryOutcome::NoMatch => format!("{id} NOMATCH"),
    };
    let mut status = Status::Clean;
    if verify {
        let params = index.params();
        let reported = outcome.id().map(|p| p as usize);
        match check_contract(index.inputs(), &q, params.delta(), params.far_radius(), reported) {
            Ok(None) => text.push_str(" OK"),
            Ok(Some(v)) => {
                text.push_str(&format!(" VIOLATION {}", v.label()));
                status = Status::Violations;
            }
            Err(e) => return error(e.to_string()),
        }
    }
    Line { text, status }
}
