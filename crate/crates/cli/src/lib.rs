//! Command-line front end for `vacuum_tori`.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when `verify` finds a
//! failing check.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use vacuum_tori::{Rational, TorusLattice, Variant};

use args::{Cli, Command, Common, Format, VariantChoice};
use commands::{Rendered, VerifyOptions};
use error::CliError;
use input::{parse_lattice, parse_ray, parse_tolerance, Lattice};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn variants_for(choice: Option<VariantChoice>, lattice: &Lattice) -> Vec<Variant> {
    match choice {
        Some(VariantChoice::Paper) => vec![Variant::Paper],
        Some(VariantChoice::Dual) => vec![Variant::Dual],
        Some(VariantChoice::Both) => Variant::ALL.to_vec(),
        None if lattice.is_rectangular() => vec![Variant::Paper],
        None => Variant::ALL.to_vec(),
    }
}

struct Setup {
    lattice: Lattice,
    variants: Vec<Variant>,
}

fn setup(common: &Common) -> Result<Setup, CliError> {
    let tol = parse_tolerance(common.tolerance)?;
    let lattice = parse_lattice(&common.omega1, &common.omega2, tol)?;
    let variants = variants_for(common.variant, &lattice);
    Ok(Setup { lattice, variants })
}

/// Runs `body` on whichever backend the input selected.
fn dispatch<F, G>(lattice: &Lattice, exact: F, float: G) -> Result<Rendered, CliError>
where
    F: FnOnce(&TorusLattice<Rational>) -> Result<Rendered, CliError>,
    G: FnOnce(&TorusLattice<f64>) -> Result<Rendered, CliError>,
{
    match lattice {
        Lattice::Exact(l) => exact(l.as_ref()),
        Lattice::Float(l) => float(l),
    }
}

macro_rules! on_backend {
    ($lattice:expr, |$l:ident| $body:expr) => {
        dispatch($lattice, |$l| $body, |$l| $body)
    };
}

fn execute(command: &Command) -> Result<(Rendered, Option<&std::path::Path>), CliError> {
    let (rendered, common) = match command {
        Command::Count(c) => {
            let s = setup(c)?;
            let f = c.format.unwrap_or(Format::Text);
            (on_backend!(&s.lattice, |l| commands::count(l, c.n, c.m, &s.variants, f))?, c)
        }
        Command::Spectrum { common: c, lambda_max } => {
            let s = setup(c)?;
            let f = c.format.unwrap_or(Format::Text);
            (
                on_backend!(&s.lattice, |l| commands::spectrum(l, c.n, c.m, &s.variants, *lambda_max, f))?,
                c,
            )
        }
        Command::Verify { common: c, check } => {
            let s = setup(c)?;
            let f = c.format.unwrap_or(Format::Text);
            let opts = VerifyOptions {
                checks: check.clone(),
                grid: c.grid,
                box_k: c.box_k,
            };
            if let Some(k) = c.box_k {
                if k < 0 {
                    return Err(CliError::Input(format!("box {k} must be non-negative")));
                }
            }
            (
                on_backend!(&s.lattice, |l| commands::verify(l, c.n, c.m, &s.variants, &opts, f))?,
                c,
            )
        }
        Command::Asymptotics { common: c, ray, steps } => {
            let s = setup(c)?;
            let f = c.format.unwrap_or(Format::Csv);
            let ray = parse_ray(ray)?;
            if *steps == 0 {
                return Err(CliError::Input("steps must be at least 1".into()));
            }
            (
                on_backend!(&s.lattice, |l| commands::asymptotics(l, &s.variants, ray, *steps, f))?,
                c,
            )
        }
        Command::MapSample { common: c, resolution } => {
            let s = setup(c)?;
            let f = c.format.unwrap_or(Format::Csv);
            (
                on_backend!(&s.lattice, |l| commands::map_sample(l, c.n, c.m, *resolution, f))?,
                c,
            )
        }
    };
    Ok((rendered, common.output.as_deref()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let failure = |e: CliError| Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let (rendered, output) = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let code = if rendered.passed { EXIT_OK } else { EXIT_VERIFY };
    match output {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &rendered.text) {
                return failure(CliError::Io {
                    path: path.display().to_string(),
                    source,
                });
            }
            Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            }
        }
        None => Outcome {
            code,
            stdout: rendered.text,
            stderr: String::new(),
        },
    }
}
