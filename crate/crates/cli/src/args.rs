use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use constitution_core::{EnumerationMode, Method, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "constitution",
    version,
    about = "Found and amend a supermajority constitution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Count,
    Full,
}

impl From<ModeArg> for EnumerationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Count => EnumerationMode::CountOnly,
            ModeArg::Full => EnumerationMode::FullTable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Condorcet,
    Conservative,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Condorcet => Method::Condorcet,
            MethodArg::Conservative => Method::Conservative,
        }
    }
}

/// Inclusive range of community sizes, written `N` or `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl std::str::FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size {x:?}"))
        };
        let (min, max) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if min == 0 || min > max {
            return Err(format!("empty or zero size range {s:?}"));
        }
        Ok(SizeRange { min, max })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate axiom-consistent rules and report the founding rule.
    Found {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Apply one amendment step to a community file.
    Amend {
        #[arg(long)]
        input: PathBuf,
        /// Rule in force; overrides the file's `delta` (default 1/2).
        #[arg(long)]
        delta: Option<Rational>,
        #[arg(long, value_enum, default_value = "condorcet")]
        method: MethodArg,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Amend repeatedly until the rule in force is retained.
    Iterate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        delta: Option<Rational>,
        #[arg(long, value_enum, default_value = "conservative")]
        method: MethodArg,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Generate seeded random ideal profiles and summarise their amendments.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `uniform` or `clustered(1/2:0.6,4/5:0.4)`.
        #[arg(long, default_value = "uniform")]
        distribution: String,
        /// Rule in force for the summary (default 1/2).
        #[arg(long)]
        delta: Option<Rational>,
        /// Write one community file per profile here instead of inlining them.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the property suite over a range of community sizes.
    Verify {
        /// `N` or `A..B` (inclusive).
        #[arg(long, default_value = "1..7")]
        n: SizeRange,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random profiles per size above the exhaustive bound.
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}
