//! Parsing of periods and other command-line values.

use num_complex::Complex;
use vacuum_tori::{parse_rational, Rational, Tolerance, TorusLattice};

use crate::error::CliError;

/// A lattice on the backend selected by the input syntax.
#[derive(Debug, Clone)]
pub enum Lattice {
    Exact(Box<TorusLattice<Rational>>),
    Float(TorusLattice<f64>),
}

impl Lattice {
    pub fn is_rectangular(&self) -> bool {
        match self {
            Lattice::Exact(l) => l.is_rectangular(),
            Lattice::Float(l) => l.is_rectangular(),
        }
    }
}

fn split_pair(text: &str) -> Result<(&str, &str), CliError> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| CliError::Input(format!("expected `re,im`, got `{text}`")))?;
    if im.contains(',') {
        return Err(CliError::Input(format!("expected `re,im`, got `{text}`")));
    }
    Ok((re.trim(), im.trim()))
}

fn parse_decimal(token: &str) -> Result<f64, CliError> {
    if token.chars().any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
        return Err(CliError::Input(format!(
            "`{token}`: symbolic values are not accepted, give a decimal"
        )));
    }
    let value = if let Some((n, d)) = token.split_once('/') {
        parse_float(n)? / parse_float(d)?
    } else {
        parse_float(token)?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Input(format!("`{token}` is not a finite number")))
    }
}

fn parse_float(token: &str) -> Result<f64, CliError> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Input(format!("`{token}` is not a number")))
}

pub fn parse_tolerance(value: Option<f64>) -> Result<Tolerance, CliError> {
    match value {
        None => Ok(Tolerance::DEFAULT),
        Some(t) if t.is_finite() && t > 0.0 && t < 1.0 => Ok(Tolerance(t)),
        Some(t) => Err(CliError::Input(format!("tolerance {t} must lie in (0, 1)"))),
    }
}

/// All four components rational selects the exact backend; anything else
/// is read as decimals.
pub fn parse_lattice(omega1: &str, omega2: &str, tol: Tolerance) -> Result<Lattice, CliError> {
    let (a, b) = split_pair(omega1)?;
    let (c, d) = split_pair(omega2)?;
    let tokens = [a, b, c, d];
    let exact: Option<Vec<Rational>> = tokens.iter().map(|t| parse_rational(t)).collect();
    if let Some(q) = exact {
        let lat = TorusLattice::new(
            Complex::new(q[0].clone(), q[1].clone()),
            Complex::new(q[2].clone(), q[3].clone()),
            tol,
        )?;
        return Ok(Lattice::Exact(Box::new(lat)));
    }
    let f = tokens
        .iter()
        .map(|t| parse_decimal(t))
        .collect::<Result<Vec<f64>, _>>()?;
    let lat = TorusLattice::new(Complex::new(f[0], f[1]), Complex::new(f[2], f[3]), tol)?;
    Ok(Lattice::Float(lat))
}

pub fn parse_ray(text: &str) -> Result<(i64, i64), CliError> {
    let (a, b) = split_pair(text)?;
    let parse = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| CliError::Input(format!("ray component `{t}` is not an integer")))
    };
    let ray = (parse(a)?, parse(b)?);
    if ray == (0, 0) {
        return Err(CliError::Input("ray must be non-zero".into()));
    }
    Ok(ray)
}
