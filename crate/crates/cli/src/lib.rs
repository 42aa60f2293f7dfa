//! `wscat`: command-line access to the finite models in `wscat-core`.
//!
//! Exit codes: 0 when every check passed, 1 on a verification failure,
//! 2 on a usage or input error, 3 on an internal error.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

/// Any displayable input error is a usage error.
pub(crate) fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "wscat", version, about = "Weakly scattered spaces and Loewy series, computed")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite posets as spectral spaces.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Refine a locally closed cover into a filtration and verify it.
    Refine(RefineArgs),
    /// Boolean rings from the catalogue.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Stone spaces of catalogued Boolean rings.
    #[command(subcommand)]
    Stone(StoneCmd),
    /// Certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// The finite model of D(k^n).
    #[command(subcommand)]
    Dcat(DcatCmd),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    /// Points, Hasse edges and Cantor-Bendixson ranks in each topology.
    Info {
        file: String,
        /// Write a DOT graph coloured by inverse-topology rank.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Is the subset of the form Y1 minus Y2 for Thomason Y1, Y2?
    Wvisible { file: String, subset: String },
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    pub file: String,
    #[arg(long, default_value = "inv")]
    pub topology: String,
    /// Target subset, e.g. `{a,b}`.
    #[arg(long)]
    pub set: String,
    /// Locally closed pieces separated by `;`, e.g. `{a,b};{c}`, or `whole`
    /// or `singletons`. May be repeated.
    #[arg(long, default_value = "whole")]
    pub cover: Vec<String>,
    /// Write the filtration as a DOT graph.
    #[arg(long)]
    pub dot: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Atoms, Loewy length and scatteredness.
    Profile { descriptor: String },
    /// Membership of an element in the Loewy ideal s_α.
    Member {
        descriptor: String,
        element: String,
        #[arg(long)]
        alpha: String,
    },
    /// The quotient by s_α.
    Quotient {
        descriptor: String,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum StoneCmd {
    /// Cantor-Bendixson rank of a prime, e.g. `prime@w*2`.
    Cbrank { descriptor: String, prime: String },
    /// Compare s_α with the primes of the α-th derived set on random samples.
    Verify {
        descriptor: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = wscat_core::selftest::DEFAULT_SEED)]
        seed: u64,
    },
    /// Support of the quotient by the stable Loewy ideal.
    Support {
        descriptor: String,
        /// Number of rational cuts tested per ratint factor.
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CertifyCmd {
    /// Tree of disjoint splittings below an element (default: 1).
    Superdec {
        descriptor: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        element: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DcatCmd {
    /// Local-to-global check of an object against a cover of its support.
    Ltg {
        /// E.g. `{p0: [1@0], p2: [2@-1]}`.
        object: String,
        /// Members separated by `;`, e.g. `{p0,p1};{p2}`. May be repeated.
        #[arg(long, required = true)]
        cover: Vec<String>,
        /// Number of primes n; defaults to one more than the largest index used.
        #[arg(long)]
        base: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run only this criterion (1-9). May be repeated.
    #[arg(long)]
    pub only: Vec<u8>,
    /// Print every check, not just one line per criterion.
    #[arg(long)]
    pub verbose: bool,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Output goes to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match catch_unwind(AssertUnwindSafe(|| commands::dispatch(cli.command, out))) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("wscat: {e}");
            e.exit_code()
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| (*s).to_owned()))
                .unwrap_or_else(|| "unknown panic".to_owned());
            eprintln!("wscat: internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}
