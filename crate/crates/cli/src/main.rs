use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use monodromy_core::harness::{self, BackendKind, CheckConfig, Format, ReportEntry};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Verifies the monodromy-matrix identities and prints a report.
///
/// Exit status: 0 when every entry passes, 1 on any failure, 2 on a
/// configuration error.
#[derive(Debug, Parser)]
#[command(name = "monodromy", version)]
struct Args {
    /// Rank to check (repeatable; 2, 3 or 4).
    #[arg(long = "n", value_name = "N")]
    n: Vec<usize>,
    /// Check to run (repeatable; default all).
    #[arg(long = "check", value_name = "NAME")]
    check: Vec<String>,
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Root of unity order for the numeric backend, q = exp(-iπ/h).
    #[arg(long = "h", default_value_t = 5)]
    h: u32,
    /// Largest tensor power of the fundamental representation.
    #[arg(long = "rep-degree", default_value_t = 3)]
    rep_degree: usize,
    /// Seed for the generic t_i values of the numeric backend.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Include per-check wall times in the report.
    #[arg(long)]
    timings: bool,
    /// Print the registered checks and exit.
    #[arg(long)]
    list: bool,
}

fn config(args: &Args) -> CheckConfig {
    let mut cfg = CheckConfig::default();
    if !args.n.is_empty() {
        cfg.n_values = args.n.iter().copied().collect();
    }
    if !args.check.is_empty() {
        cfg.checks = args.check.iter().cloned().collect();
    }
    cfg.backend = match args.backend {
        BackendArg::Exact => BackendKind::Exact,
        BackendArg::Numeric => BackendKind::Numeric,
    };
    cfg.numeric_h = args.h;
    cfg.rep_degree = args.rep_degree;
    cfg.numeric_seed = args.seed;
    cfg.timings = args.timings;
    cfg
}

fn exit_code(entries: &[ReportEntry]) -> u8 {
    u8::from(harness::any_failed(entries))
}

fn run(args: &Args) -> anyhow::Result<u8> {
    let cfg = config(args);
    let entries = match args.jobs {
        Some(j) => harness::run_checks_with_jobs(&cfg, j)?,
        None => harness::run_checks(&cfg)?,
    };
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let bytes = harness::render_report(&entries, format);
    match &args.out {
        Some(p) => std::fs::write(p, &bytes).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(exit_code(&entries))
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for s in harness::registry() {
            println!(
                "{:<18} n={}..={}  {}",
                s.name,
                s.ranks.start(),
                s.ranks.end(),
                s.tags.join(", ")
            );
        }
        return ExitCode::SUCCESS;
    }
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
