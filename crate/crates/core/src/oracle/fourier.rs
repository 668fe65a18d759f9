//! Block diagonalisation of the reduced Jacobi operator in Fourier modes.
//!
//! For `v = [[0, f], [-conj f, 0]]` the eigenvalue equation couples the
//! coefficient `f_{k,l}` only with `conj(f_{-k,-l})`:
//!
//! ```text
//! [ pi^2 theta(k,l) - 2|alpha|^2        -2 alpha conj(beta)           ] [ f_{k,l}         ]
//! [ -2 conj(alpha) beta                 pi^2 theta(-k,-l) - 2|alpha|^2 ] [ conj(f_{-k,-l}) ]
//! ```
//!
//! Each block is diagonalised from its trace and determinant without using
//! `|alpha| = |beta|`, so the two-branch formula of the spectrum module is
//! re-derived here rather than assumed. Each block contributes its two
//! eigenvalues once: for `(k,l) != 0` the pair of blocks at `+-(k,l)` spans
//! four real dimensions, and at the origin `(f, conj f)` spans two.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Variant;
use crate::scalar::Scalar;
use crate::spectrum::threshold;
use crate::vacuum::VacuumSolution;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierBlock<S> {
    pub k: i64,
    pub l: i64,
    pub theta: S,
    /// Hermitian 2x2 block acting on `(f_{k,l}, conj f_{-k,-l})`.
    pub matrix: [[Complex64; 2]; 2],
    /// `(low, high)`.
    pub eigenvalues: (f64, f64),
    /// Eigenvalues divided by `pi^2`, when they are exactly representable.
    pub exact_over_pi2: Option<(S, S)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum<S> {
    pub blocks: Vec<FourierBlock<S>>,
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
    /// Every zero/sign decision was made in exact arithmetic.
    pub exact: bool,
    pub variant: Variant,
}

impl<S: Scalar> FourierSpectrum<S> {
    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(|b| [b.eigenvalues.0, b.eigenvalues.1])
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Smallest box half-width containing every mode whose lower eigenvalue is
/// non-positive (`theta <= threshold`).
pub fn required_box<S: Scalar>(vs: &VacuumSolution<S>, variant: Variant) -> i64 {
    let lat = vs.lattice();
    let form = lat.theta_form(variant);
    let level = threshold(vs);
    let (kmax, lmax) = form.bounding_box(&level);
    let mut needed = 0;
    for k in -kmax..=kmax {
        for l in -lmax..=lmax {
            if form.value(k, l).compare(&level, lat.tolerance()) != Ordering::Greater {
                needed = needed.max(k.abs()).max(l.abs());
            }
        }
    }
    needed
}

fn hermitian_eigenvalues(m: &[[Complex64; 2]; 2]) -> (f64, f64) {
    let d1 = m[0][0].re;
    let d2 = m[1][1].re;
    let mean = 0.5 * (d1 + d2);
    let radius = (0.25 * (d1 - d2).powi(2) + m[0][1].norm_sqr()).sqrt();
    (mean - radius, mean + radius)
}

/// Spectrum of the reduced Jacobi operator restricted to modes with
/// `|k|, |l| <= box_k`, with `theta` taken from `variant`.
pub fn fourier_block_spectrum<S: Scalar>(
    vs: &VacuumSolution<S>,
    box_k: i64,
    variant: Variant,
) -> Result<FourierSpectrum<S>> {
    let needed = required_box(vs, variant);
    if box_k < needed {
        return Err(Error::BoxTooSmall {
            given: box_k,
            needed,
        });
    }
    let lat = vs.lattice();
    let form = lat.theta_form(variant);
    let (alpha, beta) = (vs.alpha(), vs.beta());
    let a2 = alpha.norm_sqr();
    let off = alpha * beta.conj() * -2.0;
    let pi2 = PI * PI;

    // Reduced exact data: |alpha|^2/pi^2 and |beta|^2/pi^2 are both the stored
    // value (the gauge keeps |alpha| = |beta|), but they enter separately.
    let a2_red = vs.alpha_abs_sq_over_pi2().clone();
    let b2_red = vs.alpha_abs_sq_over_pi2().clone();
    let two = S::from_int(2);
    let off_sq_red = S::from_int(4) * a2_red.clone() * b2_red;
    let off_red = if S::EXACT { off_sq_red.sqrt_exact() } else { None };

    let zero_tol = 1e-9 * 4.0 * a2;
    let mut spectrum = FourierSpectrum {
        blocks: Vec::with_capacity(((2 * box_k + 1) * (2 * box_k + 1)) as usize),
        negative: 0,
        zero: 0,
        positive: 0,
        exact: off_red.is_some(),
        variant,
    };

    for k in -box_k..=box_k {
        for l in -box_k..=box_k {
            let theta = form.value(k, l);
            let theta_neg = form.value(-k, -l);
            let matrix = [
                [Complex64::new(pi2 * theta.to_f64() - 2.0 * a2, 0.0), off],
                [off.conj(), Complex64::new(pi2 * theta_neg.to_f64() - 2.0 * a2, 0.0)],
            ];
            let eigenvalues = hermitian_eigenvalues(&matrix);

            let exact_over_pi2 = off_red.as_ref().map(|r| {
                let d1 = theta.clone() - two.clone() * a2_red.clone();
                let d2 = theta_neg.clone() - two.clone() * a2_red.clone();
                let mean = (d1.clone() + d2.clone()) / two.clone();
                // d1 == d2 since theta is even; the radius is |off| exactly.
                debug_assert_eq!(d1, d2);
                (mean.clone() - r.clone(), mean + r.clone())
            });

            match &exact_over_pi2 {
                Some((lo, hi)) => {
                    for v in [lo, hi] {
                        if v.is_negative() {
                            spectrum.negative += 1;
                        } else if v.is_zero() {
                            spectrum.zero += 1;
                        } else {
                            spectrum.positive += 1;
                        }
                    }
                }
                None => {
                    for v in [eigenvalues.0, eigenvalues.1] {
                        if v == 0.0 || v.abs() <= zero_tol {
                            spectrum.zero += 1;
                        } else if v < 0.0 {
                            spectrum.negative += 1;
                        } else {
                            spectrum.positive += 1;
                        }
                    }
                }
            }

            spectrum.blocks.push(FourierBlock {
                k,
                l,
                theta,
                matrix,
                eigenvalues,
                exact_over_pi2,
            });
        }
    }
    Ok(spectrum)
}
