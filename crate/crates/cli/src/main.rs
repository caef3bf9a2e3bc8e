//! `fdb`: exact finite-difference expansions of composed maps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdb_core::{Format, MultiIndex};

#[derive(Parser, Debug)]
#[command(
    name = "fdb",
    version,
    about = "Exact expansions of higher finite differences of composed maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the expansion of T_α f(ū) over the partitions of α.
    Expand(ExpandArgs),
    /// Print the expansion of Δ_v^α (f∘g)(x).
    Chain(ExpandArgs),
    /// Dump the index sets of every partition of α as JSON.
    Asets(AsetsArgs),
    /// Run randomized exact verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct AlphaArgs {
    /// Binary multi-index, e.g. 101.
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: Option<MultiIndex>,
    /// Shorthand for the all-ones index of length n.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=64))]
    pub order: Option<u8>,
}

impl AlphaArgs {
    pub fn resolve(&self) -> Option<MultiIndex> {
        self.alpha
            .or_else(|| self.order.map(|n| MultiIndex::ones(n as usize)))
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OptionalAlphaArgs {
    /// Binary multi-index to test (scaling and smooth-chain suites).
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: Option<MultiIndex>,
    /// All-ones index of length n (scaling and smooth-chain suites).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=64))]
    pub order: Option<u8>,
}

impl OptionalAlphaArgs {
    pub fn resolve(&self) -> Option<MultiIndex> {
        self.alpha
            .or_else(|| self.order.map(|n| MultiIndex::ones(n as usize)))
    }
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct AsetsArgs {
    #[command(flatten)]
    pub alpha: AlphaArgs,
    /// Include every condition with its offenders; exit 1 if any fails.
    #[arg(long)]
    pub validate: bool,
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Chain expansion against brute force, all-ones indices up to --kmax.
    #[value(name = "theorem-b")]
    ChainExpansion,
    /// Tangent expansion against the discrete tangent, all-ones indices up to --kmax.
    #[value(name = "eq9")]
    TangentExpansion,
    /// Chain expansion equals the tangent expansion on T_k(g) of an injected cuboid.
    Substitution,
    /// Operator identities: additivity, telescoping, pairing, refinement, main part.
    Identities,
    /// Log-log slope of the main-part remainder on polynomials.
    Scaling,
    /// Infinitesimal chain rule, tangent components and functor law on polynomials.
    SmoothChain,
    /// Every suite above.
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[command(flatten)]
    pub alpha: OptionalAlphaArgs,
    #[arg(long, env = "FDB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Trials per identity and per α; defaults depend on the suite.
    #[arg(long, env = "FDB_TRIALS", value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Largest index length for the expansion suites.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub kmax: u8,
    /// Space dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2", value_parser = clap::value_parser!(u8).range(1..=4))]
    pub dims: Vec<u8>,
    /// Largest ε is 2^-eps_from.
    #[arg(long, default_value_t = 3)]
    pub eps_from: u32,
    /// Smallest ε is 2^-eps_to.
    #[arg(long, default_value_t = 10)]
    pub eps_to: u32,
    /// Allowed shortfall of the remainder slope below |α| + 1.
    #[arg(long, default_value_t = 0.2)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

fn parse_alpha(s: &str) -> Result<MultiIndex, String> {
    if s.is_empty() {
        return Err("empty multi-index".into());
    }
    s.parse().map_err(|e: fdb_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: fdb_core::Error| e.to_string())
}

fn exit_code(outcome: &anyhow::Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(cli.command);
    if let Err(e) = &outcome {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_code(&outcome))
}
