use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sumfree_core::primitive::enumerate_primitive;
use sumfree_core::search::{compute_t, enumerate_maximal_sumfree, lev_construction, verify_main_theorem, SearchError, SearchOptions};
use sumfree_core::suite::{run_suite, Fault, SuiteConfig, SuiteName, DEFAULT_SAMPLES};
use sumfree_core::text::{format_set, parse_set};
use sumfree_core::{classify, TernarySet};

mod check;
mod render;

/// Primitive sets and maximal sum-free sets in F_3^n.
#[derive(Parser)]
#[command(name = "sumfree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,
    /// Save progress here and resume from it when the file exists.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Stop after this many subtrees (used to exercise resuming).
    #[arg(long, hide = true, requires = "checkpoint")]
    stop_after_tasks: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions { checkpoint: self.checkpoint.clone(), stop_after_tasks: self.stop_after_tasks, ..SearchOptions::with_jobs(self.jobs as usize) }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List primitive sets, or one per GL(n,3) orbit with --up-to-iso.
    EnumeratePrimitive {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[command(flatten)]
        out: Output,
    },
    /// List maximal sum-free sets of at least --min-size elements.
    EnumerateMaximal {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Check that the dense maximal sum-free sets are exactly the primitive sets.
    VerifyMain {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Largest size of an aperiodic maximal sum-free set.
    ComputeT {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: Output,
    },
    /// The aperiodic maximal sum-free set of size (3^(n-1)+1)/2.
    ConstructLev {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Report sum-freeness, maximality, symmetry and primitivity of a set.
    Classify {
        /// Set file, or `-` for standard input.
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run one lemma or proposition on a set file, or on sampled instances.
    Check(check::CheckArgs),
    /// Run a named batch of checks.
    RunSuite {
        /// `standard` or `extended`.
        name: SuiteName,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
        jobs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random Kneser pairs.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Checkpoint for the dimension-4 search of the extended suite.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        out: Output,
    },
}

/// Whether the checked statement held; failures map to exit status 1.
enum Outcome {
    Pass,
    Fail,
}

const EXIT_ERROR: u8 = 2;
const EXIT_INTERRUPTED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            if let Some(SearchError::Interrupted { completed, total }) = e.downcast_ref::<SearchError>() {
                eprintln!("interrupted after {completed} of {total} subtrees; rerun with the same --checkpoint to resume");
                return ExitCode::from(EXIT_INTERRUPTED);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

pub(crate) fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn read_set(path: &Path) -> Result<TernarySet> {
    parse_set(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to standard output; a closed pipe (as in `| head`) is not an error.
pub(crate) fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

pub(crate) fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize")));
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::EnumeratePrimitive { dim, up_to_iso, out } => {
            let entries = enumerate_primitive(dim, up_to_iso)?;
            match out.format {
                Format::Json => print_json(&render::primitive_json(dim, up_to_iso, &entries)),
                Format::Text => emit(&render::primitive_text(dim, up_to_iso, &entries)),
            }
            Ok(Outcome::Pass)
        }
        Command::EnumerateMaximal { dim, min_size, up_to_iso, search, out } => {
            let report = enumerate_maximal_sumfree(dim, min_size, up_to_iso, &search.options())?;
            match out.format {
                Format::Json => print_json(&report.to_json(search.timing)),
                Format::Text => emit(&render::maximal_text(&report, search.timing)),
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyMain { dim, search, out } => {
            let report = verify_main_theorem(dim, &search.options())?;
            match out.format {
                Format::Json => print_json(&report.to_json(search.timing)),
                Format::Text => emit(&render::verify_text(&report, search.timing)),
            }
            Ok(if report.verdict.is_verified() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::ComputeT { dim, search, out } => {
            let t = compute_t(dim, &search.options())?;
            match out.format {
                Format::Json => print_json(&json!({ "dim": dim, "t": t })),
                Format::Text => emit(&format!("t({dim}) = {t}\n")),
            }
            Ok(Outcome::Pass)
        }
        Command::ConstructLev { dim, out } => {
            let (a, cert) = lev_construction(dim)?;
            match out.format {
                Format::Json => print_json(&json!({ "dim": dim, "size": a.len(), "set": a, "certificate": cert })),
                Format::Text => emit(&format_set(&a)),
            }
            Ok(Outcome::Pass)
        }
        Command::Classify { input, out } => {
            let a = read_set(&input)?;
            let report = classify(&a);
            match out.format {
                Format::Json => print_json(&serde_json::to_value(&report)?),
                Format::Text => emit(&render::classify_text(&report)),
            }
            Ok(Outcome::Pass)
        }
        Command::Check(args) => check::run(args),
        Command::RunSuite { name, jobs, seed, samples, checkpoint, inject_fault, out } => {
            if samples == 0 {
                bail!("--samples must be positive");
            }
            let cfg = SuiteConfig { samples, fault: inject_fault, checkpoint, ..SuiteConfig::new(name, jobs as usize, seed) };
            let report = run_suite(&cfg)?;
            match out.format {
                Format::Json => print_json(&report.to_json()),
                Format::Text => emit(&render::suite_text(&report)),
            }
            Ok(if report.passed { Outcome::Pass } else { Outcome::Fail })
        }
    }
}
