use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lchs_harness::config::{RunConfig, ScanKind};
use lchs_harness::records::{rows_to_string, write_file, Row};
use lchs_harness::report::cmd_report;
use lchs_harness::scans::{circuit_scan, classical_scan};
use lchs_harness::{HarnessError, Result};

#[derive(Parser)]
#[command(name = "lchs", version, about = "LCHS circuit emulator and experiment harness")]
struct Cli {
    /// Reserved; nothing in the computation is random.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; overrides `out` in the config. Stdout when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discretized sum against the exact solution, no circuit.
    Classical(Common),
    /// One circuit run at the base configuration.
    Circuit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        count_only: bool,
    },
    /// Circuit runs over the configured grid.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        count_only: bool,
    },
    /// Fits and threshold checks over result files.
    Report {
        csv: Vec<PathBuf>,
        /// Directory for plot data files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit<R: Row>(rows: &[R], out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write_file(p, rows),
        None => {
            print!("{}", rows_to_string(rows));
            Ok(())
        }
    }
}

fn load(c: &Common) -> Result<(RunConfig, Option<PathBuf>)> {
    let cfg = RunConfig::load(&c.config)?;
    let out = c.out.clone().or_else(|| cfg.out.clone());
    Ok((cfg, out))
}

fn run(cli: Cli) -> Result<()> {
    let _ = cli.seed;
    match cli.cmd {
        Cmd::Classical(c) => {
            let (cfg, out) = load(&c)?;
            emit(&classical_scan(&cfg, c.workers)?, out.as_deref())
        }
        Cmd::Circuit { common, count_only } => {
            let (mut cfg, out) = load(&common)?;
            cfg.scan = ScanKind::ClassicalOnly;
            cfg.grid.clear();
            emit(&circuit_scan(&cfg, common.workers, count_only)?, out.as_deref())
        }
        Cmd::Scan { common, count_only } => {
            let (cfg, out) = load(&common)?;
            if cfg.scan == ScanKind::ClassicalOnly {
                return Err(HarnessError::Usage("scan needs `scan` and `grid` in the config".into()));
            }
            emit(&circuit_scan(&cfg, common.workers, count_only)?, out.as_deref())
        }
        Cmd::Report { csv, out } => {
            let rep = cmd_report(&csv)?;
            print!("{}", rep.text);
            for c in &rep.checks {
                println!("{}", c.line());
            }
            if let Some(dir) = out {
                rep.write_series(&dir)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lchs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
