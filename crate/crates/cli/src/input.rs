//! File loading shared by the subcommands.

use std::path::Path;

use anyhow::{bail, Context};
use tsfrechet::{Curve1, CurveFile, Decimal, Rational, Scale};

pub fn read_curves(path: &Path) -> anyhow::Result<CurveFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CurveFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn one_d(file: &CurveFile, scale: &Scale, path: &Path) -> anyhow::Result<Vec<Curve1>> {
    file.to_curves_1d(scale).with_context(|| format!("loading {}", path.display()))
}

/// `eps` as a rational in (0, 1].
pub fn eps_value(eps: Decimal) -> anyhow::Result<Rational> {
    let e = eps.to_rational();
    if e <= Rational::from_integer(0) || e > Rational::from_integer(1) {
        bail!("eps must lie in (0, 1], got {eps}");
    }
    Ok(e)
}

/// Checks `k` before any file is read so the message names the flag.
pub fn check_k(k: usize) -> anyhow::Result<()> {
    if k < 2 {
        bail!("k must be at least 2, got {k}");
    }
    Ok(())
}

/// Explored candidate prefixes allowed per curve unless overridden.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

pub fn budget(flag: usize) -> Option<usize> {
    (flag > 0).then_some(flag)
}
