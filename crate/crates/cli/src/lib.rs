//! `mpt` command-line front end: spectra, sweeps, figure data and a
//! verification suite, written as CSV or JSON.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or domain error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mpt_core::Complex64;

pub use output::{Cell, Format, OutputRecord, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mpt", version, about = "Modified Pöschl-Teller trap as an f-deformed oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound energies, spacing deviations and f²(n).
    Spectrum {
        #[command(flatten)]
        trap: TrapArgs,
        /// Only the lowest LEVELS bound levels.
        #[arg(long)]
        levels: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The potential V(x) = D tanh²(x/δ) on a grid.
    Potential {
        #[command(flatten)]
        trap: TrapArgs,
        #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 401)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mandel Q against N at fixed |α|.
    Mandel(SweepArgs),
    /// Invariant squeezing coefficient S against N at fixed |α|.
    Squeeze(SweepArgs),
    /// Quadrature variances over φ (or at one φ).
    Quadrature {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        alpha: AlphaArg,
        /// Single angle in radians; otherwise STEPS angles over [0, π).
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        #[arg(long, default_value_t = 360)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coefficients of the deformed coherent state.
    State {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-level moment audit of the coherent-state measure.
    Measure {
        #[command(flatten)]
        trap: TrapArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Only the lowest LEVELS bound levels (required above 500 levels).
        #[arg(long)]
        levels: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Data behind figure 1 (potential), 2 (Q sweeps) or 3 (S sweeps).
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        figure: u8,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite; exit 1 if any check fails.
    Verify {
        #[command(flatten)]
        trap: TrapArgs,
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TrapArgs {
    /// Dimensionless depth N = 4D.
    #[arg(long = "n-param", conflicts_with = "depth", allow_hyphen_values = true)]
    pub n_param: Option<f64>,
    /// Well depth D in units of ħω.
    #[arg(long, allow_hyphen_values = true)]
    pub depth: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct AlphaArg {
    /// Complex label, e.g. 2, 2+1i, -0.5-3i.
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    pub alpha: Complex64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub alpha_abs: f64,
    /// Single trap instead of a grid.
    #[command(flatten)]
    pub trap: TrapArgs,
    #[arg(long, requires = "n_max", conflicts_with_all = ["n_param", "depth"], allow_hyphen_values = true)]
    pub n_min: Option<f64>,
    #[arg(long, requires = "n_min", allow_hyphen_values = true)]
    pub n_max: Option<f64>,
    #[arg(long, conflicts_with_all = ["n_param", "depth"])]
    pub steps: Option<usize>,
    #[arg(long, conflicts_with_all = ["n_param", "depth"])]
    pub log_scale: bool,
    /// 400 log-spaced N over [4, 1e3].
    #[arg(long, conflicts_with_all = ["n_min", "n_max", "steps", "fig3_grid", "n_param", "depth"])]
    pub fig2_grid: bool,
    /// 400 log-spaced N over [1, 1e3].
    #[arg(long, conflicts_with_all = ["n_min", "n_max", "steps", "n_param", "depth"])]
    pub fig3_grid: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (also with `j`).
pub fn parse_alpha(text: &str) -> Result<Complex64, String> {
    let z: Complex64 = text.trim().parse().map_err(|_| format!("not a complex number: {text:?}"))?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("alpha must be finite: {text:?}"));
    }
    Ok(z)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
