use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::parse::{parse_integer, parse_u64};

fn big_arg(s: &str) -> Result<BigUint, String> {
    parse_integer(s).map_err(|e| e.to_string())
}

fn u64_arg(s: &str) -> Result<u64, String> {
    parse_u64(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Census and constants for elliptic curves over Q with a 7-isogeny.
///
/// Integer arguments accept exact scientific notation such as 1e9.
#[derive(Debug, Parser)]
#[command(name = "isog7", version)]
pub struct Cli {
    /// Worker threads (default: all cores); 1 runs the sequential code paths
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result here instead of stdout; relative paths resolve
    /// against $ISOG7_OUTPUT_DIR when it is set
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every twist-minimal curve up to a twist height
    Enumerate {
        #[arg(long, value_parser = big_arg)]
        max_height: BigUint,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Reuse (or create) a binary representation table
        #[arg(long)]
        table_cache: Option<PathBuf>,
    },
    /// Count twist-minimal curves and all curves up to a height
    Count {
        #[arg(long, value_parser = big_arg)]
        max_height: BigUint,
        #[arg(long, value_parser = u64_arg, default_value = "1e7")]
        prime_bound: u64,
        #[arg(long, value_parser = u64_arg, default_value = "1e6")]
        mc_samples: u64,
        #[arg(long, value_parser = u64_arg, default_value = "0")]
        seed: u64,
        #[arg(long)]
        table_cache: Option<PathBuf>,
    },
    /// Compute Q, R, kappa, ell0, c1 and c2 as JSON
    Constants {
        #[arg(long, value_parser = u64_arg, default_value = "1e8")]
        prime_bound: u64,
        #[arg(long, value_parser = u64_arg, default_value = "1e7")]
        mc_samples: u64,
        #[arg(long, value_parser = u64_arg, default_value = "0")]
        seed: u64,
        #[arg(long, value_parser = big_arg, default_value = "1e30")]
        census_cutoff: BigUint,
    },
    /// Cross-check the census against brute-force oracles and sieve identities
    Verify {
        #[arg(long, value_parser = big_arg)]
        max_height: BigUint,
        /// Damage the census record at this index before comparing
        #[arg(long, hide = true)]
        corrupt_record: Option<usize>,
    },
    /// Print the census as a table of (A, B), (a, b), twist height, defect
    Table {
        #[arg(long, value_parser = big_arg, default_value = "1e9")]
        max_height: BigUint,
    },
}

/// The effective configuration of a run, echoed as metadata.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub max_height: Option<String>,
    pub format: Option<Format>,
    pub mc_samples: Option<u64>,
    pub seed: Option<u64>,
    pub prime_bound: Option<u64>,
    pub census_cutoff: Option<String>,
    pub threads: usize,
    pub output_path: Option<String>,
    pub table_cache: Option<String>,
}

impl RunConfig {
    pub fn new(cli: &Cli, threads: usize, output: Option<&std::path::Path>) -> Self {
        let mut c = RunConfig {
            command: "",
            max_height: None,
            format: None,
            mc_samples: None,
            seed: None,
            prime_bound: None,
            census_cutoff: None,
            threads,
            output_path: output.map(|p| p.display().to_string()),
            table_cache: None,
        };
        let cache = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        match &cli.command {
            Command::Enumerate {
                max_height,
                format,
                table_cache,
            } => {
                c.command = "enumerate";
                c.max_height = Some(max_height.to_string());
                c.format = Some(*format);
                c.table_cache = cache(table_cache);
            }
            Command::Count {
                max_height,
                prime_bound,
                mc_samples,
                seed,
                table_cache,
            } => {
                c.command = "count";
                c.max_height = Some(max_height.to_string());
                c.prime_bound = Some(*prime_bound);
                c.mc_samples = Some(*mc_samples);
                c.seed = Some(*seed);
                c.table_cache = cache(table_cache);
            }
            Command::Constants {
                prime_bound,
                mc_samples,
                seed,
                census_cutoff,
            } => {
                c.command = "constants";
                c.prime_bound = Some(*prime_bound);
                c.mc_samples = Some(*mc_samples);
                c.seed = Some(*seed);
                c.census_cutoff = Some(census_cutoff.to_string());
            }
            Command::Verify { max_height, .. } => {
                c.command = "verify";
                c.max_height = Some(max_height.to_string());
            }
            Command::Table { max_height } => {
                c.command = "table";
                c.max_height = Some(max_height.to_string());
            }
        }
        c
    }
}
