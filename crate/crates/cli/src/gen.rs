use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use tsfrechet::curve_file::format_line;
use tsfrechet::hardgen::{sample_instance, BitVec, SampleSpec};
use tsfrechet::{generate, AnyCurve, GadgetFamily, Scale};

use crate::Status;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    family: GadgetFamily,
    /// Number of query vectors.
    #[arg(long = "nA")]
    n_a: usize,
    /// Number of input vectors.
    #[arg(long = "nB")]
    n_b: usize,
    /// Vector dimension.
    #[arg(long)]
    d: usize,
    /// Most ones per query vector.
    #[arg(long)]
    sparsity: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chance of each one bit.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Force at least one orthogonal pair.
    #[arg(long)]
    plant: bool,
    /// Writes PREFIX.inputs.txt, PREFIX.queries.txt and PREFIX.manifest.txt.
    #[arg(long)]
    out_prefix: PathBuf,
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    if args.family.needs_sparsity() && args.sparsity.is_none() {
        bail!("family {} needs --sparsity", args.family);
    }
    let spec = SampleSpec {
        a_count: args.n_a,
        b_count: args.n_b,
        dim: args.d,
        sparsity: args.sparsity,
        density: args.density,
        plant: args.plant,
    };
    let instance = sample_instance(&spec, args.seed)?;
    // gadget coordinates are whole numbers and delta is 1
    let gadgets = generate(&instance, args.family, 1)?;
    let unit = Scale::from_units_per_one(1)?;

    write(&with_suffix(&args.out_prefix, "inputs"), &curve_lines("p", &gadgets.inputs, &unit)?)?;
    write(&with_suffix(&args.out_prefix, "queries"), &curve_lines("q", &gadgets.queries, &unit)?)?;

    let mut manifest = String::new();
    let sparsity = args.sparsity.map_or("none".to_owned(), |k| k.to_string());
    writeln!(manifest, "family={}", args.family)?;
    writeln!(manifest, "seed={}", args.seed)?;
    writeln!(manifest, "nA={}\nnB={}\nd={}", args.n_a, args.n_b, args.d)?;
    writeln!(manifest, "sparsity={sparsity}")?;
    writeln!(manifest, "density={}", args.density)?;
    writeln!(manifest, "planted={}", args.plant)?;
    writeln!(manifest, "orthogonal_pair={}", instance.has_orthogonal_pair())?;
    writeln!(manifest, "delta=1")?;
    for (i, v) in instance.a().iter().enumerate() {
        writeln!(manifest, "A q{i} {}", bits(v))?;
    }
    for (i, v) in instance.b().iter().enumerate() {
        writeln!(manifest, "B p{i} {}", bits(v))?;
    }
    write(&with_suffix(&args.out_prefix, "manifest"), &manifest)?;
    println!(
        "queries={} inputs={} orthogonal_pair={}",
        gadgets.queries.len(),
        gadgets.inputs.len(),
        instance.has_orthogonal_pair()
    );
    Ok(Status::Clean)
}

fn with_suffix(prefix: &Path, what: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(format!(".{what}.txt"));
    PathBuf::from(name)
}

fn curve_lines(tag: &str, curves: &[AnyCurve], scale: &Scale) -> anyhow::Result<String> {
    let mut out = String::new();
    for (i, c) in curves.iter().enumerate() {
        out.push_str(&format_line(&format!("{tag}{i}"), c, scale)?);
        out.push('\n');
    }
    Ok(out)
}

fn bits(v: &BitVec) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
