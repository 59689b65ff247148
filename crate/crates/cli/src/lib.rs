//! Command-line front end: argument parsing, dispatch and reports.

pub mod args;
pub mod commands;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, Format};
use report::Report;

pub use report::{validate_report, without_timing};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] brjuno_core::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Omega(_) => "omega",
        Command::Brjuno(_) => "brjuno",
        Command::Cf(_) => "cf",
        Command::Series(_) => "series",
        Command::Potential(_) => "potential",
        Command::Lemma22(_) => "lemma22",
        Command::Equiv(_) => "equiv",
        Command::Hausdorff(_) => "hausdorff",
        Command::Energy(_) => "energy",
    }
}

fn dispatch(cli: &Cli, r: &mut Report) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Omega(a) => commands::cmd_omega(a, g, r),
        Command::Brjuno(a) => commands::cmd_brjuno(a, g, r),
        Command::Cf(a) => commands::cmd_cf(a, g, r),
        Command::Series(a) => commands::cmd_series(a, g, r),
        Command::Potential(a) => commands::cmd_potential(a, g, r),
        Command::Lemma22(a) => commands::cmd_lemma22(a, g, r),
        Command::Equiv(a) => commands::cmd_equiv(a, g, r),
        Command::Hausdorff(a) => commands::cmd_hausdorff(a, g, r),
        Command::Energy(a) => commands::cmd_energy(a, g, r),
    }
}

/// Runs one command and returns the process exit code: 0 on success, 2 on
/// resonance or an infinite value (the report is still written), 1 on
/// argument errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if cli.global.precision < 32 {
        eprintln!("error: --precision must be at least 32");
        return 1;
    }
    if cli.global.threads == Some(0) {
        eprintln!("error: --threads must be positive");
        return 1;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let start = Instant::now();
    let mut report = Report::new(command_name(&cli.command));
    report.config("precision", report::int(cli.global.precision)).config("seed", report::int(cli.global.seed));
    report.config("format", report::text(if cli.global.format == Format::Json { "json" } else { "csv" }));
    match pool.install(|| dispatch(&cli, &mut report)) {
        Ok(()) => {}
        Err(CliError::Core(brjuno_core::Error::Resonant(w))) => {
            report.result("status", report::text("resonant"));
            report.witness(commands::resonance_json(&w, "p"));
            report.infinite = true;
            let mut t = report::Table::new(&["status", "k", "p"]);
            let k: Vec<String> = w.k.coords().iter().map(i64::to_string).collect();
            t.push(vec!["resonant".into(), k.join(" "), w.tag.to_string()]);
            report.table = t;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    }
    let elapsed = start.elapsed().as_millis();
    let body = match cli.global.format {
        Format::Json => {
            let v = report.to_json(elapsed, pool.current_num_threads());
            let mut s = serde_json::to_string_pretty(&v).expect("string-valued JSON serializes");
            s.push('\n');
            s
        }
        Format::Csv => report.table.render(),
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return 1;
    }
    if report.infinite {
        2
    } else {
        0
    }
}
