use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use magicount::cli::cache::{Cache, DEFAULT_CACHE_PATH};
use magicount::cli::commands::{self, CliError, OracleCheck, SeqRequest, Table1Golden};
use magicount::cli::format::OutputFormat;
use magicount::cli::report::RunReport;
use magicount::oracle::DEFAULT_BUDGET;
use magicount::SequenceKind;

/// Count d-dimensional 2-magic tensors exactly.
#[derive(Parser)]
#[command(name = "magicount", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Cache file for computed entries.
    #[arg(long, global = true, default_value = DEFAULT_CACHE_PATH)]
    cache: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Emit the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of v, u, w or w01.
    Seq {
        #[arg(long)]
        kind: SequenceKind,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        n_max: usize,
        /// table, csv, json or bfile.
        #[arg(long, default_value = "table")]
        format: OutputFormat,
        /// First index to print (0 is valid for w and w01).
        #[arg(long)]
        offset: Option<usize>,
    },
    /// Compare the engine with the reference table for d = 2, 3.
    Table1 {
        /// Replacement reference in `d,row,v1,...,v6` lines.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Cross-check the engine against brute-force enumeration.
    Oracle {
        /// Comma-separated `d:n` pairs.
        #[arg(long, default_value = "2:1,2:2,2:3,2:4,3:1,3:2,3:3")]
        pairs: String,
        /// Comma-separated subset of v,w,w01,indec,bijection,birkhoff.
        #[arg(long, default_value = "v,w,w01,indec,bijection,birkhoff")]
        checks: String,
        /// Maximum tuples or search nodes per enumeration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Normalised ratios and their bounds.
    Asym {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        n_max: usize,
        /// Decimal digits for d = 2.
        #[arg(long, default_value_t = 30)]
        precision: u32,
    },
    /// Inspect or clear the cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    Inspect,
    Clear,
}

fn open_cache(global: &Global) -> Result<Cache, CliError> {
    if global.no_cache {
        Ok(Cache::disabled())
    } else {
        Ok(Cache::open(&global.cache)?)
    }
}

fn emit(report: &RunReport, json: bool) -> i32 {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    report.exit_code()
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let global = &cli.global;
    match cli.command {
        Command::Seq {
            kind,
            dim,
            n_max,
            format,
            offset,
        } => {
            let mut cache = open_cache(global)?;
            let out = commands::cmd_seq(
                &SeqRequest {
                    kind,
                    d: dim,
                    n_max,
                    format,
                    offset,
                },
                &mut cache,
            )?;
            print!("{}", out.rendered);
            if out.cache_hits > 0 {
                eprintln!("{} cache hits", out.cache_hits);
            }
            Ok(0)
        }
        Command::Table1 { golden } => {
            let golden = match golden {
                None => Table1Golden::embedded(),
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    Table1Golden::parse(&text).map_err(CliError::Usage)?
                }
            };
            let mut cache = open_cache(global)?;
            Ok(emit(&commands::cmd_table1(&mut cache, &golden)?, global.json))
        }
        Command::Oracle {
            pairs,
            checks,
            budget,
        } => {
            let pairs = commands::parse_pairs(&pairs).map_err(CliError::Usage)?;
            let checks = checks
                .split(',')
                .filter(|c| !c.trim().is_empty())
                .map(|c| c.trim().parse::<OracleCheck>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::Usage)?;
            Ok(emit(&commands::cmd_oracle(&pairs, &checks, budget)?, global.json))
        }
        Command::Asym {
            dim,
            n_max,
            precision,
        } => {
            let mut cache = open_cache(global)?;
            Ok(emit(&commands::cmd_asym(dim, n_max, precision, &mut cache)?, global.json))
        }
        Command::Cache { action } => {
            let mut cache = open_cache(global)?;
            let report = match action {
                CacheAction::Inspect => commands::cmd_cache_inspect(&cache),
                CacheAction::Clear => commands::cmd_cache_clear(&mut cache)?,
            };
            Ok(emit(&report, global.json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
