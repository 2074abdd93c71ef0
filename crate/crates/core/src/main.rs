use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use spinphase::distributions::DistributionKind;
use spinphase::io::{cmd_correlation, cmd_dist, cmd_limit, cmd_singlet, cmd_tensors, KindSelection};
use spinphase::{Error, Result};

/// Spin P, Q and F distributions from Fano statistical tensors.
///
/// Spins are given as twice-spin integers (1 for spin 1/2) and angles in
/// degrees.
#[derive(Parser, Debug)]
#[command(name = "spinphase", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the Fano tensors of a density-matrix file.
    Tensors {
        input: PathBuf,
    },
    /// Singlet distribution against the angle between the two directions.
    Singlet {
        /// p, q, f or all
        #[arg(long, value_parser = parse_selection)]
        kind: KindSelection,
        #[arg(long)]
        twice_spin: i64,
        #[arg(long, default_value_t = 0.5)]
        step_deg: f64,
        /// Output CSV path (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Singlet spin correlation from each distribution against the exact value.
    Correlation {
        #[arg(long)]
        twice_spin: i64,
        /// Analyzer direction a as x,y,z
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<f64>,
        /// Analyzer direction b as x,y,z
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<f64>,
    },
    /// Distribution coefficients of one rank over a list of spins.
    Limit {
        #[arg(long, value_parser = parse_kind)]
        kind: DistributionKind,
        #[arg(long)]
        k: u32,
        /// Comma-separated twice-spin values
        #[arg(long, value_delimiter = ',', required = true)]
        twice_spins: Vec<i64>,
    },
    /// Distribution of a single-spin state sampled on a quadrature grid.
    Dist {
        input: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        kind: DistributionKind,
        /// Grid band limit; defaults to 2s.
        #[arg(long)]
        band_limit: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_selection(s: &str) -> std::result::Result<KindSelection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<DistributionKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn three_components(name: &str, v: &[f64]) -> Result<[f64; 3]> {
    <[f64; 3]>::try_from(v)
        .map_err(|_| Error::Domain(format!("--{name} needs three comma-separated components, got {}", v.len())))
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Tensors { input } => with_output(None, |w| cmd_tensors(&input, &mut &mut *w)),
        Command::Singlet { kind, twice_spin, step_deg, out } => {
            with_output(out.as_deref(), |w| cmd_singlet(kind, twice_spin, step_deg, &mut &mut *w))
        }
        Command::Correlation { twice_spin, a, b } => {
            let a = three_components("a", &a)?;
            let b = three_components("b", &b)?;
            with_output(None, |w| cmd_correlation(twice_spin, a, b, &mut &mut *w))
        }
        Command::Limit { kind, k, twice_spins } => with_output(None, |w| cmd_limit(kind, k, &twice_spins, &mut &mut *w)),
        Command::Dist { input, kind, band_limit, out } => {
            with_output(out.as_deref(), |w| cmd_dist(&input, kind, band_limit, &mut &mut *w))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spinphase: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
