//! `nubound`: sharpened bounds on the continuous part of the infinitesimal
//! character for the exceptional groups.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 when `verify` finds a
//! value that differs from the published one, 3 on internal errors.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nubound_core::cache::{default_cache_dir, CACHE_ENV};
use nubound_core::cases::{CaseLabel, Tier};
use nubound_core::Error;

use commands::{Settings, What};
use render::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "nubound", version, about = "Exact bounds for ‖ν‖ on the exceptional Lie groups")]
struct Cli {
    /// Output format. Defaults to md for `cases` and `verify`, json otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Print norms as √(p/q) instead of the squared value p/q.
    #[arg(long, global = true)]
    sqrt: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Recompute inventories instead of reading or writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Inventory cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the cases with their class and number of chambers.
    Cases {
        #[arg(long, value_parser = parse_tier)]
        tier: Option<Tier>,
    },
    /// Compute the full report for one case.
    Compute {
        #[arg(value_parser = parse_label)]
        case: CaseLabel,
    },
    /// Compare computed values with the published ones.
    Verify {
        /// A case label, or `all`.
        target: String,
        /// Cases used with `all` (default: full).
        #[arg(long, value_parser = parse_tier)]
        tier: Option<Tier>,
    },
    /// List u-small K-types, boundary K-types or chambers.
    Enumerate {
        #[arg(value_parser = parse_label)]
        case: CaseLabel,
        #[arg(long)]
        chamber: Option<usize>,
        #[arg(long, value_enum, default_value = "usmall")]
        what: What,
    },
    /// Non-decreasable K-types of one chamber.
    Nondecreasable {
        #[arg(value_parser = parse_label)]
        case: CaseLabel,
        #[arg(long)]
        chamber: usize,
        /// Squared-norm cap, as p/q (default 4·max‖2ρ_n‖²).
        #[arg(long)]
        cap: Option<String>,
    },
    /// Lambda norm, spin norm and pencil minimum of one K-type.
    Norms {
        #[arg(value_parser = parse_label)]
        case: CaseLabel,
        /// Coordinates, comma separated, e.g. 0,0,0,1.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

fn parse_label(s: &str) -> Result<CaseLabel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tier(s: &str) -> Result<Tier, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) => 1,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    }
    let settings = Settings {
        cache_dir: if cli.no_cache { None } else { cli.cache_dir.clone().or_else(default_cache_dir) },
        sqrt: cli.sqrt,
    };
    let table_default = |f: Option<Format>| f.unwrap_or(Format::Md);
    let json_default = |f: Option<Format>| f.unwrap_or(Format::Json);
    let (output, format, code) = match &cli.command {
        Command::Cases { tier } => (commands::cases(*tier)?, table_default(cli.format), 0),
        Command::Compute { case } => (commands::compute(*case, &settings)?, json_default(cli.format), 0),
        Command::Verify { target, tier } => {
            let labels = if target.eq_ignore_ascii_case("all") {
                tier.unwrap_or(Tier::Full).cases()
            } else {
                if tier.is_some() {
                    return Err(Error::Usage("--tier only applies to `verify all`".into()));
                }
                vec![target.parse()?]
            };
            let v = commands::verify(&labels, &settings)?;
            (v.output, table_default(cli.format), if v.ok { 0 } else { 2 })
        }
        Command::Enumerate { case, chamber, what } => {
            (commands::enumerate(*case, *chamber, *what, &settings)?, json_default(cli.format), 0)
        }
        Command::Nondecreasable { case, chamber, cap } => {
            (commands::nondecreasable_cmd(*case, *chamber, cap.as_deref())?, json_default(cli.format), 0)
        }
        Command::Norms { case, mu } => {
            (commands::norms(*case, &commands::parse_mu(mu)?, &settings)?, json_default(cli.format), 0)
        }
    };
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = out.write_all(render(&output, format).as_bytes());
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nubound: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
