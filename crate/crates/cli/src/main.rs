mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wzaccel_core::exact::{parse_rational, Rational};

#[derive(Parser, Debug)]
#[command(name = "wzaccel", version, about = "Certify and accelerate hypergeometric series")]
struct Cli {
    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Spec,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartialCheck {
    Glaisher,
    Guillera,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Verify one catalog entry numerically.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 30)]
        digits: i64,
        #[arg(long, default_value_t = 10_000)]
        max_terms: usize,
    },
    /// Verify every catalog entry.
    VerifyAll {
        #[arg(long, default_value_t = 25)]
        digits: i64,
        #[arg(long, default_value_t = 10_000)]
        max_terms: usize,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Generate an accelerated series for f(n, b).
    Accelerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        n: Rational,
        #[arg(long, value_enum, default_value_t = Emit::Spec)]
        emit: Emit,
        #[arg(long, default_value_t = 30)]
        digits: i64,
    },
    /// Check the telescoping certificate.
    Certify {
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check that 20 single-coefficient perturbations are rejected.
        #[arg(long)]
        perturb: bool,
    },
    /// Exact partial-sum identities.
    PartialSums {
        #[arg(long, value_enum)]
        check: PartialCheck,
        #[arg(long, default_value_t = 200)]
        n_max: i64,
    },
    /// Compare both sides of the one-parameter rate -1/4 identity.
    Identity8 {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, default_value_t = 25)]
        digits: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// List entries.
    List,
    /// Write the catalog in its text format.
    Save {
        #[arg(long)]
        out: std::path::PathBuf,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::Output { format: cli.format, timings: cli.timings };
    let code = match cli.cmd {
        Cmd::Catalog { action: CatalogCmd::List } => commands::catalog_list(&out),
        Cmd::Catalog { action: CatalogCmd::Save { out: path } } => commands::catalog_save(&path),
        Cmd::Verify { id, digits, max_terms } => commands::verify(&out, &id, digits, max_terms),
        Cmd::VerifyAll { digits, max_terms, jobs } => commands::verify_all(&out, digits, max_terms, jobs),
        Cmd::Accelerate { theorem, a, b, n, emit, digits } => commands::accelerate(theorem, a, b, n, emit, digits),
        Cmd::Certify { mode, points, seed, perturb } => commands::certify(mode, points, seed, perturb),
        Cmd::PartialSums { check, n_max } => commands::partial_sums(check, n_max),
        Cmd::Identity8 { a, digits } => commands::identity8(&a, digits),
    };
    ExitCode::from(code)
}
