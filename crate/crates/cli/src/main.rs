#![allow(clippy::needless_range_loop)]

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use gosset_core::apposition::JACOBI_SEED;
use gosset_core::verify::DEFAULT_TOLERANCE;
use gosset_core::LieType;

/// Exit status for a failed verification or consistency check.
pub const EXIT_FAIL: u8 = 1;
/// Exit status for a usage error.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for an I/O error.
pub const EXIT_IO: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Edges {
    None,
    Polytope,
}

#[derive(Debug, Parser)]
#[command(
    name = "gosset",
    version,
    about = "Gosset circle radii, their spectral cross-check and Coxeter-plane figures"
)]
pub struct Cli {
    /// Comparison tolerance, strictly between 0 and 1e-2.
    #[arg(long, global = true, env = "GOSSET_TOLERANCE", default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    pub tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the sampled Jacobi check and the generic element of h(β).
    #[arg(long, global = true, default_value_t = JACOBI_SEED)]
    pub seed: u64,

    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radii of the Gosset circles from the spectrum of (2/h)A.
    Radii { lie_type: LieType },
    /// Cross-check the radii against the adjoint spectrum.
    #[command(group(ArgGroup::new("target").required(true).args(["lie_type", "all"])))]
    Verify {
        lie_type: Option<LieType>,
        /// Run the full sweep A2..A8, B2..B8, C2..C8, D4..D8, E6, E7, E8, F4, G2.
        #[arg(long)]
        all: bool,
    },
    /// Coxeter-plane figure as SVG (text), CSV or JSON.
    Project {
        lie_type: LieType,
        #[arg(long, value_enum, default_value_t = Edges::None)]
        edges: Edges,
        /// Primitive-root exponent m selecting the plane where the Coxeter element acts by γ^m.
        #[arg(long, default_value_t = 1)]
        exponent: u32,
        /// Comma-separated ring colors, innermost first.
        #[arg(long, value_delimiter = ',')]
        palette: Vec<String>,
    },
    /// Exact characteristic polynomial of cA with integer coefficients.
    Charpoly { lie_type: LieType },
    /// E8 radii beside their golden-ratio pairings.
    Masses { lie_type: LieType },
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t < 1e-2 {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in (0, 1e-2), got {s}"))
    }
}

/// What a command produced: the text to emit and its exit status.
pub struct Outcome {
    pub body: String,
    pub code: u8,
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
    }
}

fn configure_threads(n: usize) {
    #[cfg(feature = "parallel")]
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                gosset_core::Error::Io(_) => EXIT_IO,
                gosset_core::Error::Unsupported(_) | gosset_core::Error::InvalidExponent(_) => {
                    EXIT_USAGE
                }
                _ => EXIT_FAIL,
            };
            return ExitCode::from(code);
        }
    };
    if let Err(e) = emit(&cli, &outcome.body) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(outcome.code)
}
