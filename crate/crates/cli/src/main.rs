//! `qdim`: runs the identity, chain, enumeration and counting checks and
//! streams one report per check as JSON lines or CSV.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 for
//! invalid arguments, 3 when an enumeration exceeds the feasibility limit.

mod run;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qdim_core::gf::{DEFAULT_LIMIT, SUPPORTED_ORDERS};

use run::{Outcome, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Main identity: closed product against the raw triple sum.
    Verify,
    /// Inner-sum lemma for each k (all of 0..=n unless --k is given).
    Lemma1,
    /// Every step of the simplification, lemma and conclusion chains.
    Chain,
    /// Dimension by enumeration, by the stratified formula and in closed form.
    Brute,
    /// Enumerated matrix and subspace counts against their formulas.
    Counts,
    /// All of the above.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qdim", version, about = "Exact checks of a q-series dimension identity")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Values of n, either `a` or the inclusive range `a..b`.
    #[arg(long = "n", visible_alias = "n-range", global = true, value_parser = parse_range, default_value = "1")]
    n: RangeInclusive<i64>,

    /// Restrict lemma checks to this k.
    #[arg(long, global = true)]
    k: Option<i64>,

    /// Field orders for enumeration, comma separated.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_order, default_value = "2")]
    q: Vec<u32>,

    /// Largest number of objects an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    limit: u64,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write reports here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), s.trim()),
    };
    let parse = |v: &str| v.parse::<i64>().map_err(|e| format!("`{v}`: {e}"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo < 1 || lo > hi {
        return Err(format!("need 1 <= a <= b, got {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_order(s: &str) -> Result<u32, String> {
    let q: u32 = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if SUPPORTED_ORDERS.contains(&q) {
        Ok(q)
    } else {
        Err(format!("unsupported field order {q}, expected one of {SUPPORTED_ORDERS:?}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.k {
        if k < 0 || k > *cli.n.start() {
            eprintln!("error: --k {k} must lie in 0..={} for every n in the range", cli.n.start());
            return ExitCode::from(2);
        }
    }
    let sink: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let config = RunConfig { command: cli.command, n: cli.n, k: cli.k, q: cli.q, limit: cli.limit, format: cli.format };
    match run::run(&config, BufWriter::new(sink)) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(run::Fatal::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(run::Fatal::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(run::Fatal::Io(e)) => {
            eprintln!("error: writing reports: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range(" 2 .. 4 ").unwrap(), 2..=4);
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("5..4").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("8").unwrap(), 8);
        assert!(parse_order("6").is_err());
        let cli = Cli::try_parse_from(["qdim", "brute", "--q", "2,3,4"]).unwrap();
        assert_eq!(cli.q, vec![2, 3, 4]);
        assert_eq!(cli.n, 1..=1);
    }
}
