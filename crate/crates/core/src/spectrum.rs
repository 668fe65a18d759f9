//! Closed-form spectrum of the reduced Jacobi operator and the lattice-point
//! counts giving index and nullity.
//!
//! Writing a variation field as `v = [[0, f], [-conj f, 0]]` and expanding
//! `f` in Fourier modes, each mode `(k, l)` yields exactly two eigenvalue
//! branches of real multiplicity one,
//!
//! ```text
//! lambda_plus  = pi^2 theta(k, l)
//! lambda_minus = pi^2 theta(k, l) - 4 |alpha|^2
//! ```
//!
//! so `lambda_minus < 0` inside the ellipse `theta < 4|alpha|^2 / pi^2` and the
//! origin contributes one extra zero through `lambda_plus`. All eigenvalues
//! here are carried in units of `pi^2`, which keeps them exact on the
//! rational backend.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::{ThetaForm, Variant};
use crate::scalar::{Scalar, Tolerance};
use crate::vacuum::VacuumSolution;

pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// `Q(k, l) < level`
    Strict,
    /// `Q(k, l) = level`
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCount {
    pub count: usize,
    /// Points found, in lexicographic order; only filled for [`CountMode::Equal`].
    pub points: Vec<Point>,
    pub exact: bool,
}

/// Split of the enumeration box against a level.
#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct Classification {
    /// Certainly below the level.
    pub below: usize,
    /// Equal to the level (exact) or within tolerance of it (float).
    pub on: Vec<Point>,
}

pub(crate) fn classify<S: Scalar>(form: &ThetaForm<S>, level: &S, tol: Tolerance) -> Result<Classification> {
    form.check_definite()?;
    if level.is_negative() {
        return Err(Error::NegativeLevel(level.to_string()));
    }
    let (kmax, lmax) = form.bounding_box(level);
    let mut out = Classification::default();
    for k in -kmax..=kmax {
        for l in -lmax..=lmax {
            match form.value(k, l).compare(level, tol) {
                Ordering::Less => out.below += 1,
                Ordering::Equal => out.on.push((k, l)),
                Ordering::Greater => {}
            }
        }
    }
    Ok(out)
}

/// Counts lattice points strictly inside (`Strict`) or on (`Equal`) the
/// ellipse `Q(k, l) = level`.
pub fn count_lattice_points<S: Scalar>(
    form: &ThetaForm<S>,
    level: &S,
    mode: CountMode,
    tol: Tolerance,
) -> Result<PointCount> {
    let cls = classify(form, level, tol)?;
    Ok(match mode {
        CountMode::Strict => PointCount {
            count: cls.below,
            points: Vec::new(),
            exact: S::EXACT,
        },
        CountMode::Equal => PointCount {
            count: cls.on.len(),
            points: cls.on,
            exact: S::EXACT,
        },
    })
}

/// Ellipse level `E / (pi^2 |conj(w2) w1 - w2 conj(w1)|)`, equal to `4 |alpha|^2 / pi^2`.
pub fn threshold<S: Scalar>(vs: &VacuumSolution<S>) -> S {
    vs.energy_over_pi2().clone() / vs.lattice().period_gap()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexNullityResult<S> {
    pub index: usize,
    pub nullity: usize,
    pub threshold: S,
    pub interior_points: usize,
    /// Lattice points on the ellipse (within tolerance on the float backend).
    pub boundary_points: Vec<Point>,
    pub variant: Variant,
    /// `true` only on the exact backend.
    pub exact: bool,
    /// Certified ranges. Equal to `(index, index)` and `(nullity, nullity)`
    /// on the exact backend; on the float backend the boundary points may
    /// belong to either side.
    pub index_range: (usize, usize),
    pub nullity_range: (usize, usize),
}

impl<S> IndexNullityResult<S> {
    /// Float backend found points it could not certify as on or off the ellipse.
    pub fn inexact_boundary(&self) -> bool {
        !self.exact && !self.boundary_points.is_empty()
    }
}

/// Index and nullity: `index = #{theta < threshold}`,
/// `nullity = 1 + #{theta = threshold}`.
///
/// The `+1` is the constant field in the one-dimensional kernel of
/// `ad_A ad_Abar` on `m`.
pub fn index_nullity<S: Scalar>(vs: &VacuumSolution<S>, variant: Variant) -> Result<IndexNullityResult<S>> {
    let lat = vs.lattice();
    let form = lat.theta_form(variant);
    let level = threshold(vs);
    let cls = classify(&form, &level, lat.tolerance())?;
    let index = cls.below;
    let nullity = 1 + cls.on.len();
    let (index_range, nullity_range) = if S::EXACT {
        ((index, index), (nullity, nullity))
    } else {
        // Points in the tolerance band are either interior, boundary, or exterior.
        let band = cls.on.len();
        ((index, index + band), (1, nullity))
    };
    Ok(IndexNullityResult {
        index,
        nullity,
        threshold: level,
        interior_points: index,
        boundary_points: cls.on,
        variant,
        exact: S::EXACT,
        index_range,
        nullity_range,
    })
}

/// One Fourier mode with both eigenvalue branches, in units of `pi^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry<S> {
    pub k: i64,
    pub l: i64,
    pub theta_value: S,
    /// `lambda_minus / pi^2 = theta - 4|alpha|^2/pi^2`
    pub minus_over_pi2: S,
    /// `lambda_plus / pi^2 = theta`
    pub plus_over_pi2: S,
}

impl<S: Scalar> SpectrumEntry<S> {
    pub fn lambda_minus(&self) -> f64 {
        PI * PI * self.minus_over_pi2.to_f64()
    }

    pub fn lambda_plus(&self) -> f64 {
        PI * PI * self.plus_over_pi2.to_f64()
    }
}

/// All modes whose lower branch is at most `lambda_max`, sorted by
/// `(lambda_minus, lambda_plus, k, l)`.
pub fn enumerate_spectrum<S: Scalar>(
    vs: &VacuumSolution<S>,
    lambda_max: f64,
    variant: Variant,
) -> Result<Vec<SpectrumEntry<S>>> {
    let bottom = -4.0 * vs.alpha_abs_sq();
    if !(lambda_max.is_finite() && lambda_max >= bottom) {
        return Err(Error::InvalidArgument(format!(
            "lambda_max {lambda_max} is below the bottom of the spectrum {bottom}"
        )));
    }
    let cap = S::from_f64(lambda_max / (PI * PI))
        .ok_or_else(|| Error::InvalidArgument(format!("lambda_max {lambda_max}")))?;
    let lat = vs.lattice();
    let tol = lat.tolerance();
    let form = lat.theta_form(variant);
    let thr = threshold(vs);
    // lambda_minus <= cap  <=>  theta <= thr + cap
    let level = thr.clone() + cap.clone();
    let (kmax, lmax) = form.bounding_box(&level);
    let mut entries = Vec::new();
    for k in -kmax..=kmax {
        for l in -lmax..=lmax {
            let theta = form.value(k, l);
            let minus = theta.clone() - thr.clone();
            if minus.compare(&cap, tol) != Ordering::Greater {
                entries.push(SpectrumEntry {
                    k,
                    l,
                    plus_over_pi2: theta.clone(),
                    theta_value: theta,
                    minus_over_pi2: minus,
                });
            }
        }
    }
    entries.sort_by(|a, b| {
        a.minus_over_pi2
            .partial_cmp(&b.minus_over_pi2)
            .unwrap_or(Ordering::Equal)
            .then(
                a.plus_over_pi2
                    .partial_cmp(&b.plus_over_pi2)
                    .unwrap_or(Ordering::Equal),
            )
            .then((a.k, a.l).cmp(&(b.k, b.l)))
    });
    Ok(entries)
}

/// Numbers of negative and zero eigenvalues (with multiplicity) among the
/// entries, counting both branches.
pub fn sign_counts<S: Scalar>(entries: &[SpectrumEntry<S>], tol: Tolerance) -> (usize, usize) {
    let zero = S::zero();
    let mut neg = 0;
    let mut zer = 0;
    for e in entries {
        for v in [&e.minus_over_pi2, &e.plus_over_pi2] {
            match v.compare(&zero, tol) {
                Ordering::Less => neg += 1,
                Ordering::Equal => zer += 1,
                Ordering::Greater => {}
            }
        }
    }
    (neg, zer)
}
