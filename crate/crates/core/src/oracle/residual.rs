//! Pointwise residual checks: Jacobi fields, harmonicity, and the SU(2)
//! and periodicity properties of the map.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Variant;
use crate::scalar::Scalar;
use crate::spectrum::threshold;
use crate::vacuum::{Mat2, VacuumSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullMode {
    /// Constant field in `m` killed by `ad_A ad_Abar`.
    Constant,
    /// Fourier mode on the threshold ellipse.
    Mode(i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiResidual {
    /// `max |J v|` over the sample points, with `max |v| = O(1)`.
    pub residual: f64,
    /// `max |v(z + w_i) - v(z)|`: zero for a field that lives on the torus.
    pub periodicity_defect: f64,
}

/// Applies `J v = -(1/4) Laplacian v + [A, [Abar, v]]` to a candidate
/// Jacobi field, using matrix commutators for the zero-order term and the
/// exact Laplacian of plane waves.
pub fn jacobi_residual<S: Scalar>(
    vs: &VacuumSolution<S>,
    mode: NullMode,
    variant: Variant,
) -> Result<JacobiResidual> {
    let (a, abar) = vs.a_matrix();
    let ad = |v: Mat2| a.commutator(abar.commutator(v));
    let samples = sample_points(vs, 7);

    let mode = match mode {
        NullMode::Mode(0, 0) if threshold(vs).is_zero() => NullMode::Constant,
        other => other,
    };

    match mode {
        NullMode::Constant => {
            let f = kernel_direction(&ad);
            let v = Mat2::from_m(f);
            Ok(JacobiResidual {
                residual: ad(v).norm(),
                periodicity_defect: 0.0,
            })
        }
        NullMode::Mode(k, l) => {
            let lat = vs.lattice();
            let form = lat.theta_form(variant);
            let theta = form.value(k, l);
            let level = threshold(vs);
            if theta.compare(&level, lat.tolerance()) != Ordering::Equal || (k, l) == (0, 0) {
                return Err(Error::NotANullMode {
                    k,
                    l,
                    theta: theta.to_string(),
                    threshold: level.to_string(),
                });
            }
            let xi = lat.wave_vector(variant, k, l);
            let xi = (xi.re.to_f64(), xi.im.to_f64());
            let lap_eig = PI * PI * (xi.0 * xi.0 + xi.1 * xi.1);

            // (pi^2 theta - 2|alpha|^2) f_+ = 2 alpha conj(beta) conj(f_-), with f_+ = 1.
            let (alpha, beta) = (vs.alpha(), vs.beta());
            let diag = lap_eig - 2.0 * alpha.norm_sqr();
            let f_minus = (Complex64::new(diag, 0.0) / (alpha * beta.conj() * 2.0)).conj();

            let field = |z: Complex64| {
                let phase = 2.0 * PI * (xi.0 * z.re + xi.1 * z.im);
                let e = Complex64::from_polar(1.0, phase);
                e + f_minus * e.conj()
            };
            let (w1, w2) = vs.periods_f64();
            let mut residual = 0.0f64;
            let mut defect = 0.0f64;
            for &z in &samples {
                let f = field(z);
                // Both exponentials have Laplacian eigenvalue 4 pi^2 |xi|^2.
                let v = Mat2::from_m(f);
                let jv = v.scale(Complex64::new(lap_eig, 0.0)) + ad(v);
                residual = residual.max(jv.norm());
                defect = defect
                    .max((field(z + w1) - f).norm())
                    .max((field(z + w2) - f).norm());
            }
            Ok(JacobiResidual {
                residual,
                periodicity_defect: defect,
            })
        }
    }
}

/// Unit `f` with `[A, [Abar, v(f)]] = 0`, found from the real 2x2 matrix of
/// `f -> [A, [Abar, v(f)]]_{01}`.
fn kernel_direction(ad: &impl Fn(Mat2) -> Mat2) -> Complex64 {
    let p = ad(Mat2::from_m(Complex64::new(1.0, 0.0))).0[0][1];
    let q = ad(Mat2::from_m(Complex64::new(0.0, 1.0))).0[0][1];
    // rows (p.re, q.re) and (p.im, q.im); null vector is orthogonal to the larger row
    let rows = [(p.re, q.re), (p.im, q.im)];
    let (x, y) = if rows[0].0.hypot(rows[0].1) >= rows[1].0.hypot(rows[1].1) {
        rows[0]
    } else {
        rows[1]
    };
    let norm = x.hypot(y);
    if norm == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::new(-y / norm, x / norm)
}

/// Sample points `z = s w1 + t w2` on an `count x count` grid offset from the lattice.
fn sample_points<S: Scalar>(vs: &VacuumSolution<S>, count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count * count);
    for i in 0..count {
        for j in 0..count {
            let s = (i as f64 + 0.31) / count as f64;
            let t = (j as f64 + 0.67) / count as f64;
            out.push(vs.point(s, t));
        }
    }
    out
}

/// Residual of the harmonic map equation `d*(phi^-1 d phi) = 0` written as
/// `(1/2) |phi^-1 Laplacian(phi) - (phi^-1 phi_x)^2 - (phi^-1 phi_y)^2|`,
/// with fourth-order centred differences of step `1/n` in `x` and `y`.
/// Converges at fourth order for any smooth harmonic map.
pub fn harmonicity_residual<S: Scalar>(vs: &VacuumSolution<S>, n: usize) -> Result<f64> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("harmonicity grid {n} < 8")));
    }
    let h = 1.0 / n as f64;
    let first = |f: &dyn Fn(f64) -> Mat2| {
        (f(-2.0 * h) - f(2.0 * h) + (f(h) - f(-h)).scale(Complex64::new(8.0, 0.0)))
            .scale(Complex64::new(1.0 / (12.0 * h), 0.0))
    };
    let second = |f: &dyn Fn(f64) -> Mat2| {
        let c = |x: f64| Complex64::new(x, 0.0);
        (-(f(2.0 * h) + f(-2.0 * h)) + (f(h) + f(-h)).scale(c(16.0)) - f(0.0).scale(c(30.0)))
            .scale(c(1.0 / (12.0 * h * h)))
    };
    let mut worst = 0.0f64;
    for z in sample_points(vs, 4) {
        let along_x = |d: f64| vs.evaluate(z + Complex64::new(d, 0.0));
        let along_y = |d: f64| vs.evaluate(z + Complex64::new(0.0, d));
        let inv = vs.evaluate(z).adjoint();
        let u = inv * first(&along_x);
        let v = inv * first(&along_y);
        let lap = inv * (second(&along_x) + second(&along_y));
        let r = (lap - u * u - v * v).norm() * 0.5;
        worst = worst.max(r);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapResiduals {
    /// `max |phi(z + w_i) - phi(z)|`.
    pub periodicity: f64,
    /// `max |phi phi^* - I|`, `max |det phi - 1|`.
    pub unitarity: f64,
    pub determinant: f64,
    pub samples: usize,
}

/// Periodicity and SU(2) checks at `samples` pseudo-random points of the
/// fundamental domain (deterministic for a given seed).
pub fn map_residuals<S: Scalar>(vs: &VacuumSolution<S>, samples: usize, seed: u64) -> MapResiduals {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w1, w2) = vs.periods_f64();
    let mut out = MapResiduals {
        periodicity: 0.0,
        unitarity: 0.0,
        determinant: 0.0,
        samples,
    };
    for _ in 0..samples {
        let z = vs.point(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let phi = vs.evaluate(z);
        out.periodicity = out
            .periodicity
            .max((vs.evaluate(z + w1) - phi).norm())
            .max((vs.evaluate(z + w2) - phi).norm());
        out.unitarity = out
            .unitarity
            .max((phi * phi.adjoint() - Mat2::IDENTITY).norm());
        out.determinant = out
            .determinant
            .max((phi.det() - Complex64::new(1.0, 0.0)).norm());
    }
    out
}
