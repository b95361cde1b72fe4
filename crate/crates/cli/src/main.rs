//! `pentaperm`: check, explain and search permutation pentanomials.
//!
//! Exit codes: 0 success, 1 an oracle disagreed with a prediction,
//! 2 usage or configuration error.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pentanomial::equivalence::Pool;
use pentanomial::Class;

use commands::{Output, Table1Args, UsageError};
use config::{Format, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "pentaperm", version, about = "Permutation pentanomials over GF(2^2m)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest field degree 2m swept exhaustively.
    #[arg(long, global = true)]
    brute_cap: Option<u32>,
    /// Config file of `key = value` lines (also PENTAPERM_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct SpecArgs {
    /// Family: A, B or C.
    #[arg(long, value_parser = parse_class)]
    class: Class,
    #[arg(long)]
    i: u32,
    #[arg(long)]
    j: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Predict whether f permutes GF(2^2m), optionally confirming exhaustively.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        brute: bool,
    },
    /// Print the set of m for which f permutes.
    Condition {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Reconcile the published table of pentanomials with the engine.
    Table1 {
        /// Inclusive range LO..HI of m to sweep exhaustively.
        #[arg(long, value_parser = commands::parse_range)]
        m_range: Option<(u32, u32)>,
        /// Sweep m = 1..6 when no range is given.
        #[arg(long)]
        brute: bool,
        /// Restrict to one row and add equivalence certificates.
        #[arg(long)]
        row: Option<u32>,
    },
    /// Verify the two polynomial identities over a grid of shifts.
    Identities {
        #[arg(long, default_value_t = 8)]
        i_max: u32,
        #[arg(long, default_value_t = 8)]
        j_max: u32,
    },
    /// Compare closed-form r values with the gcd oracle.
    Rvalues {
        #[arg(long, default_value_t = 8)]
        i_max: u32,
        #[arg(long, default_value_t = 8)]
        j_max: u32,
    },
    /// Inspect the rational map g on the unit circle and its branch points.
    Gcheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
    },
    /// Find an equivalence certificate to a monomial or bivariate form.
    Equiv {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
        /// Coefficient pool: f4 or full.
        #[arg(long, default_value = "f4", value_parser = parse_pool)]
        pool: PoolArg,
    },
    /// Enumerate pentanomial shapes that permute for every m in a set.
    Search {
        #[arg(long, default_value_t = 30)]
        t_max: u32,
        /// Comma-separated values of m.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5])]
        m_set: Vec<u32>,
    },
}

#[derive(Debug, Clone, Copy)]
enum PoolArg {
    F4,
    Full,
}

fn parse_class(s: &str) -> Result<Class, String> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(Class::A),
        "B" => Ok(Class::B),
        "C" => Ok(Class::C),
        other => Err(format!("unknown class {other:?}; expected A, B or C")),
    }
}

fn parse_pool(s: &str) -> Result<PoolArg, String> {
    match s.to_ascii_lowercase().as_str() {
        "f4" => Ok(PoolArg::F4),
        "full" => Ok(PoolArg::Full),
        other => Err(format!("unknown pool {other:?}; expected f4 or full")),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, UsageError> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(format!("{}CONFIG", config::ENV_PREFIX)).map(PathBuf::from));
    let text = match &path {
        Some(p) => Some(
            std::fs::read_to_string(p).map_err(|e| UsageError(format!("reading {}: {e}", p.display())))?,
        ),
        None => None,
    };
    let flags = Overrides {
        brute_cap: cli.brute_cap,
        workers: cli.workers,
        format: cli.format,
        out: cli.out.clone(),
    };
    RunConfig::resolve(&flags, |k| std::env::var(k).ok(), text.as_deref()).map_err(|e| UsageError(e.0))
}

fn run(cli: Cli) -> Result<(String, bool), UsageError> {
    let cfg = load_config(&cli)?;
    if cfg.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build_global()
            .map_err(|e| UsageError(e.to_string()))?;
    }
    let spec = |a: &SpecArgs| commands::spec(a.class, a.i, a.j);
    let output = match &cli.command {
        Command::Check { spec: a, m, brute } => Output::Report(commands::check(&spec(a)?, *m, *brute, &cfg)?),
        Command::Condition { spec: a } => Output::Report(commands::condition(&spec(a)?)?),
        Command::Table1 { m_range, brute, row } => Output::Report(commands::table1(
            &Table1Args {
                m_range: *m_range,
                brute: *brute,
                row: *row,
            },
            &cfg,
        )?),
        Command::Identities { i_max, j_max } => Output::Report(commands::identities(*i_max, *j_max)?),
        Command::Rvalues { i_max, j_max } => Output::Report(commands::rvalues(*i_max, *j_max)?),
        Command::Gcheck { spec: a, m } => Output::Report(commands::gcheck(&spec(a)?, *m)?),
        Command::Equiv { spec: a, m, pool } => {
            let pool = match pool {
                PoolArg::F4 => Pool::F4,
                PoolArg::Full => Pool::Full,
            };
            Output::Report(commands::equiv(&spec(a)?, *m, &pool, &cfg)?)
        }
        Command::Search { t_max, m_set } => commands::search(*t_max, m_set.clone(), cfg.format, &cfg)?,
    };
    let (text, ok) = match output {
        Output::Report(r) => (r.render(cfg.format), r.all_agree()),
        Output::Raw(s) => (s, true),
    };
    match &cfg.out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| UsageError(format!("writing {}: {e}", p.display())))?
        }
        None => print!("{text}"),
    }
    Ok((text, ok))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((_, true)) => ExitCode::SUCCESS,
        Ok((_, false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
