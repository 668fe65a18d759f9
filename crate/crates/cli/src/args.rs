use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "vacuum-tori", version, about = "Index and nullity of vacuum harmonic maps from flat tori to S^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index and nullity from the lattice-point count.
    Count(Common),
    /// Table of Jacobi eigenvalues up to a cutoff.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Largest lower-branch eigenvalue to list.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda_max: f64,
    },
    /// Run the independent oracles against the closed-form counts.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Checks to run (comma separated).
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        check: Vec<Check>,
    },
    /// Index / energy along a ray of winding numbers.
    Asymptotics {
        #[command(flatten)]
        common: Common,
        /// Direction `n0,m0` of the ray.
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        ray: String,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
    /// Points of the image on S^2 over a grid of the fundamental domain.
    MapSample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 16)]
        resolution: usize,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// First period as `re,im` (rationals `p/q` or decimals).
    #[arg(long, allow_hyphen_values = true)]
    pub omega1: String,
    /// Second period as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub omega2: String,
    #[arg(short = 'n', default_value_t = 0, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(short = 'm', default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    /// Form used for the Fourier modes; defaults to `paper` on rectangular
    /// lattices and `both` otherwise.
    #[arg(long, value_enum)]
    pub variant: Option<VariantChoice>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Relative tolerance for equality tests on decimal input.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Finite-difference grid size.
    #[arg(long, default_value_t = 24)]
    pub grid: usize,
    /// Fourier box half-width (default: smallest sufficient).
    #[arg(long = "box")]
    pub box_k: Option<i64>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantChoice {
    Paper,
    Dual,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Energy,
    Jacobi,
    Periodicity,
    Harmonicity,
    Fourier,
    Fd,
    All,
}

impl Check {
    pub const EACH: [Check; 6] = [
        Check::Energy,
        Check::Jacobi,
        Check::Periodicity,
        Check::Harmonicity,
        Check::Fourier,
        Check::Fd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Energy => "energy",
            Check::Jacobi => "jacobi",
            Check::Periodicity => "periodicity",
            Check::Harmonicity => "harmonicity",
            Check::Fourier => "fourier",
            Check::Fd => "fd",
            Check::All => "all",
        }
    }
}
