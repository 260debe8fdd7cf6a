//! Command line front end: one JSON report per run, with verdicts.
//!
//! Exit codes: 0 all verdicts pass, 1 usage or input error, 2 a formula
//! verdict failed, 3 internal assertion.

pub mod commands;
pub mod config;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use galdef_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "galdef", version, about = "Exact checks for conjugate self-dual deformation computations")]
pub struct Cli {
    /// flat key = value file; flags on the command line win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// seed for randomized choices (Xoshiro256** seeded through SplitMix64)
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub cmd: commands::Cmd,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Verdict { name: name.into(), pass }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Value,
    pub seed: u64,
    pub results: serde_json::Value,
    pub verdicts: Vec<Verdict>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value, seed: u64, results: serde_json::Value, verdicts: Vec<Verdict>) -> Self {
        let ok = !verdicts.is_empty() && verdicts.iter().all(|v| v.pass);
        Report {
            command: command.into(),
            inputs,
            seed,
            results,
            verdicts,
            ok,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("{} (seed {})\n", self.command, self.seed);
                for v in &self.verdicts {
                    s.push_str(&format!("  [{}] {}\n", if v.pass { "PASS" } else { "FAIL" }, v.name));
                }
                s.push_str(&format!("ok: {}\n", self.ok));
                s
            }
        }
    }
}

/// Error from a command, already classified by exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Contract(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::usage(s)
    }
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: msg.into() }
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("GALDEF_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses argv, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let args = match config::merge_config(args) {
        Ok(a) => a,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    init_threads();
    let report = match commands::execute(&cli.cmd, cli.seed) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let text = report.render(cli.format);
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if report.ok {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}
