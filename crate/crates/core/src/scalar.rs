//! Number backends.
//!
//! Every computation runs on a single backend: exact rationals (for lattices
//! given by rational periods) or `f64`. Boundary counts are equality tests, so
//! the float backend always carries an explicit relative tolerance and reports
//! its results as inexact.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Relative tolerance used by the float backend for every equality decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(pub f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A real field element usable as a lattice coordinate.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and equality is decidable.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// Nearest representable value. Exact for the rational backend (every
    /// finite double is a dyadic rational).
    fn from_f64(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Square root if it is representable in this backend.
    fn sqrt_exact(&self) -> Option<Self>;

    /// Three-way comparison; the float backend treats values within
    /// `tol * max(|a|, |b|)` of each other as equal.
    fn compare(&self, other: &Self, tol: Tolerance) -> Ordering;

    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.compare(other, tol) == Ordering::Equal
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn compare(&self, other: &Self, tol: Tolerance) -> Ordering {
        let scale = self.abs().max(other.abs());
        if (self - other).abs() <= tol.0 * scale {
            Ordering::Equal
        } else if self < other {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Option<Self> {
        <Rational as FromPrimitive>::from_f64(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &num * &num == *self.numer() && &den * &den == *self.denom() {
            Some(Rational::new(num, den))
        } else {
            None
        }
    }

    fn compare(&self, other: &Self, _tol: Tolerance) -> Ordering {
        self.cmp(other)
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a backend value for reports: `p/q` (or `p`) when exact, shortest
/// round-trip decimal otherwise.
pub fn format_scalar<S: Scalar>(value: &S) -> String {
    value.to_string()
}

/// Integer `r` with `r >= sqrt(x)` for `x >= 0`, used for enumeration boxes.
pub(crate) fn ceil_sqrt_bound<S: Scalar>(x: &S) -> i64 {
    let v = x.to_f64().max(0.0);
    // Margin absorbs rounding of the f64 image; over-enumeration is harmless.
    (v.sqrt() * (1.0 + 1e-12)).ceil() as i64 + 1
}
