//! `jetsec`: command-line front end for the jet-polynomial engine.
//!
//! Exit status: 0 success, 1 an identity or check failed, 2 usage error,
//! 3 the query was refused by the size guardrail. Diagnostics go to stderr.

mod commands;
mod report;

use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "jetsec", version, about = "Exact computations with jet polynomials")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Inversion expansion of a polynomial.
    Expand {
        #[arg(long)]
        poly: String,
    },
    /// Partner of a polynomial at level n, or why there is none.
    Partner(PolyAtLevel),
    /// Membership in P_n with the lowest x0 power as evidence.
    Member(PolyAtLevel),
    /// Total derivative by the product rule.
    Derive {
        #[arg(long)]
        poly: String,
    },
    /// A basis of P_{n,d}: the closed form (d = 2) or the solver kernel.
    Basis {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, value_enum, default_value_t = BasisSource::Theorem)]
        source: BasisSource,
    },
    /// Per-level dimensions from the closed formula and/or the solver.
    Dims {
        #[arg(long)]
        n: Range,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, value_enum, default_value_t = DimsSource::Both)]
        source: DimsSource,
    },
    /// Dimension and basis of P_{n,d} or P_{n,d,l} from the exact solver.
    Solve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Verify an identity over a parameter grid.
    Identity {
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long)]
        n: Range,
        /// Grid of k2 for the corollary (default 1..n-3).
        #[arg(long)]
        k2: Option<Range>,
        /// Check the permutation bijection for n up to this value.
        #[arg(long, default_value_t = 10)]
        bijection_max_n: u32,
    },
    /// Dump the permutation bijection for one (n, μ) and check it.
    Bijection {
        #[arg(long)]
        n: u32,
        /// Composition as a comma list, e.g. 2,1,0.
        #[arg(long)]
        mu: String,
    },
    /// Solver facts for P_{n,d} where no closed form is known.
    Probe {
        #[arg(long)]
        n: Range,
        #[arg(long, default_value_t = 3)]
        d: u32,
    },
}

#[derive(Args, Debug)]
struct PolyAtLevel {
    #[arg(long)]
    poly: String,
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisSource {
    Theorem,
    Solver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DimsSource {
    Formula,
    Solver,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Prop {
    Cis,
    Corollary,
    Theorem,
}

/// Inclusive range written `a..b`, or a single value.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Range(RangeInclusive<u32>);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("not a number: {t:?}"))
        };
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok(Range(a..=b))
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<jetsec::Error> for CliError {
    fn from(e: jetsec::Error) -> Self {
        match e {
            jetsec::Error::SizeLimit { .. } => CliError::Refused(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Refused(_) => 3,
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let report = commands::dispatch(cli.verb)?;
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a diagnostic
            let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
        }
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("jetsec: {e}");
            ExitCode::from(e.code())
        }
    }
}
