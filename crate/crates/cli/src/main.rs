//! `sflat`: batch front end for the constructions and verifications.
//!
//! Exit codes: 0 when every verification passes, 1 for a verified failure
//! (the report is still emitted), 2 for input and usage errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use sflat::completion::{CompletionError, DEFAULT_DEPTH};
use sflat::obtain::ObtainError;
use sflat::ring::{RingError, DEFAULT_FACTOR_BOUND};
use sflat::spectrum::SpectrumError;

#[derive(Debug, Parser)]
#[command(name = "sflat", version, about = "Exact checks for localization, completion and obtainability")]
pub struct Cli {
    /// Tower depth N for completions and limits.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Trial division bound for factorizations.
    #[arg(long, global = true, default_value_t = DEFAULT_FACTOR_BOUND)]
    pub factor_bound: u128,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The number of subsets used in Krull dimension d.
    Mu { d: u64 },
    /// Build a family of multiplicative subsets for a poset and verify it.
    Distinguish {
        /// Poset document: {"primes": [...], "covers": [[lower, upper], ...]}.
        poset: PathBuf,
        /// dim1, dim2, wave:<l> or mu.
        #[arg(long, default_value = "mu")]
        mode: String,
    },
    /// Artinian check of the four rings built from s and t.
    Artinian {
        /// Coefficients of s, low degree first.
        #[arg(long)]
        s: String,
        /// Coefficients of t, low degree first.
        #[arg(long)]
        t: String,
        /// Z, or Fp[t] for a prime p; over Fp[t] coefficients are lists.
        #[arg(long, default_value = "Z")]
        base: String,
    },
    /// Completion tower, Gamma, Lambda, lim^1 and Delta of a module.
    Complete {
        /// Invariant factors like 12,0 or relations like [[2,0],[0,3]].
        #[arg(long)]
        module: String,
        /// Generators of the multiplicative subset, like 2,3.
        #[arg(long)]
        generators: String,
    },
    /// Homology of the dualized telescope against A / t_n A and t_n-torsion.
    Telescope {
        #[arg(long)]
        module: String,
        #[arg(long)]
        generators: String,
        /// Telescope length; defaults to --depth.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Whether C is weakly cotorsion for the subset generated by m.
    WcCheck {
        #[arg(long)]
        module: String,
        #[arg(long)]
        m: i64,
    },
    /// Verify an obtainability certificate, optionally against test modules.
    VerifyCert {
        certificate: PathBuf,
        /// JSON list of invariant-factor lists.
        #[arg(long)]
        tests: Option<PathBuf>,
    },
    /// Run the property batteries.
    Battery,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Obtain(#[from] ObtainError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "Input",
            CliError::Spectrum(e) => match e {
                SpectrumError::DimensionMismatch { .. } => "DimensionMismatch",
                SpectrumError::Parse(_) => "Parse",
                _ => "Spectrum",
            },
            CliError::Ring(e) => match e {
                RingError::NotInS1(_) => "NotInS1",
                RingError::NotInS2 { .. } => "NotInS2",
                _ => "Ring",
            },
            CliError::Completion(CompletionError::NotStabilized { .. }) => "NotStabilized",
            CliError::Completion(_) => "Completion",
            CliError::Obtain(e) => e.kind(),
        }
    }

    /// 1 when the input was understood and a verification failed.
    pub fn exit_code(&self) -> u8 {
        let verified = |c: &CompletionError| matches!(c, CompletionError::NotStabilized { .. });
        match self {
            CliError::Completion(c) => 2 - verified(c) as u8,
            CliError::Obtain(ObtainError::Completion(c)) => 2 - verified(c) as u8,
            CliError::Obtain(ObtainError::MalformedTree(_) | ObtainError::Parse(_)) => 2,
            CliError::Obtain(_) => 1,
            _ => 2,
        }
    }
}

/// A finished run: the structured report and its text rendering.
pub struct Outcome {
    pub pass: bool,
    pub checks: Vec<&'static str>,
    pub report: Value,
    pub lines: Vec<String>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Mu { .. } => "mu",
        Command::Distinguish { .. } => "distinguish",
        Command::Artinian { .. } => "artinian",
        Command::Complete { .. } => "complete",
        Command::Telescope { .. } => "telescope",
        Command::WcCheck { .. } => "wc-check",
        Command::VerifyCert { .. } => "verify-cert",
        Command::Battery => "battery",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (code, doc, lines) = match commands::run(&cli) {
        Ok(o) => {
            let doc = json!({ "command": name, "pass": o.pass, "checks": o.checks, "report": o.report });
            (u8::from(!o.pass), doc, o.lines)
        }
        Err(e) => {
            let doc = json!({
                "command": name,
                "pass": false,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            (e.exit_code(), doc, vec![format!("error ({}): {e}", e.kind())])
        }
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize")),
        Format::Text => {
            for l in &lines {
                println!("{l}");
            }
            if code != 2 {
                println!("{}", if code == 0 { "PASS" } else { "FAIL" });
            }
        }
    }
    ExitCode::from(code)
}
