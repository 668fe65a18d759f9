//! Finite-difference discretisation of the Jacobi eigenvalue problem
//!
//! ```text
//! -(1/4) (f_xx + f_yy + 8 |alpha|^2 f + 8 alpha conj(beta) conj f) = lambda f
//! ```
//!
//! on the torus, written as a real system in `(Re f, Im f)`. The grid lives in
//! lattice coordinates `z = s w1 + t w2`, `(s, t) in [0,1)^2`, where the
//! Laplacian has constant coefficients
//! `g^11 d_ss + 2 g^12 d_st + g^22 d_tt` (inverse Gram matrix), so periodic
//! boundary conditions are exact on the grid. All derivatives use second
//! order centred stencils.
//!
//! The operator commutes with grid translations in `s`, so the spectrum is
//! computed sector by sector: the matrix is projected onto the real span of
//! `cos(2 pi j s)` and `sin(2 pi j s)` (times every `t`-node and component)
//! and each projected block is diagonalised by cyclic Jacobi rotations.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::Variant;
use crate::oracle::eigen::{jacobi_eigen, SymmetricMatrix};
use crate::scalar::Scalar;
use crate::spectrum::index_nullity;
use crate::vacuum::VacuumSolution;

pub const MIN_GRID: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct FdOperator {
    n: usize,
    /// Inverse Gram matrix `(g^11, g^12, g^22)`.
    metric: [f64; 3],
    /// Real matrix of `f -> 8|alpha|^2 f + 8 alpha conj(beta) conj f`.
    zero_order: [[f64; 2]; 2],
}

impl FdOperator {
    pub fn new<S: Scalar>(vs: &VacuumSolution<S>, n: usize) -> Result<Self> {
        if n < MIN_GRID {
            return Err(Error::GridTooCoarse(format!(
                "grid size {n} is below the minimum {MIN_GRID}"
            )));
        }
        let (g11, g12, g22) = vs.lattice().gram();
        let (g11, g12, g22) = (g11.to_f64(), g12.to_f64(), g22.to_f64());
        let det = g11 * g22 - g12 * g12;
        let metric = [g22 / det, -g12 / det, g11 / det];
        let a2 = vs.alpha().norm_sqr();
        let rho = vs.alpha() * vs.beta().conj();
        let zero_order = [
            [8.0 * (a2 + rho.re), 8.0 * rho.im],
            [8.0 * rho.im, 8.0 * (a2 - rho.re)],
        ];
        Ok(Self {
            n,
            metric,
            zero_order,
        })
    }

    pub fn grid(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn metric(&self) -> [f64; 3] {
        self.metric
    }

    #[inline]
    fn index(&self, i: usize, j: usize, c: usize) -> usize {
        (i * self.n + j) * 2 + c
    }

    /// `y = L x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        let h2 = 1.0 / (n * n) as f64;
        let [g11, g12, g22] = self.metric;
        let css = g11 / h2;
        let ctt = g22 / h2;
        let cst = 2.0 * g12 / (4.0 * h2);
        let m = self.zero_order;
        for i in 0..n {
            let ip = (i + 1) % n;
            let im = (i + n - 1) % n;
            for j in 0..n {
                let jp = (j + 1) % n;
                let jm = (j + n - 1) % n;
                for c in 0..2 {
                    let at = |ii: usize, jj: usize| x[self.index(ii, jj, c)];
                    let centre = at(i, j);
                    let lap = css * (at(ip, j) - 2.0 * centre + at(im, j))
                        + ctt * (at(i, jp) - 2.0 * centre + at(i, jm))
                        + cst * (at(ip, jp) - at(ip, jm) - at(im, jp) + at(im, jm));
                    let zo = m[c][0] * x[self.index(i, j, 0)] + m[c][1] * x[self.index(i, j, 1)];
                    y[self.index(i, j, c)] = -0.25 * (lap + zo);
                }
            }
        }
    }

    /// The full matrix; only sensible for small grids.
    pub fn dense(&self) -> SymmetricMatrix {
        let dim = self.dim();
        let mut out = SymmetricMatrix::zeros(dim);
        let mut e = vec![0.0; dim];
        let mut col = vec![0.0; dim];
        for b in 0..dim {
            e[b] = 1.0;
            self.apply(&e, &mut col);
            e[b] = 0.0;
            for (a, v) in col.iter().enumerate() {
                out.set(a, b, *v);
            }
        }
        out
    }

    /// Orthonormal real Fourier functions of the `s` index for sector `freq`.
    fn sector_functions(&self, freq: usize) -> Vec<Vec<f64>> {
        let n = self.n;
        let phase = |i: usize| 2.0 * PI * (freq * i) as f64 / n as f64;
        if freq == 0 || 2 * freq == n {
            let norm = (1.0 / n as f64).sqrt();
            vec![(0..n).map(|i| norm * phase(i).cos()).collect()]
        } else {
            let norm = (2.0 / n as f64).sqrt();
            vec![
                (0..n).map(|i| norm * phase(i).cos()).collect(),
                (0..n).map(|i| norm * phase(i).sin()).collect(),
            ]
        }
    }

    /// Frequencies `0..=n/2` labelling the translation-invariant sectors.
    pub fn sectors(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.n / 2
    }

    /// Projection of the operator onto sector `freq`, together with the norm
    /// of the part of `L P` that leaves the sector (zero up to rounding).
    pub fn sector_block(&self, freq: usize) -> (SymmetricMatrix, f64) {
        let n = self.n;
        let funcs = self.sector_functions(freq);
        // basis vector index -> (function, t node, component)
        let labels: Vec<(usize, usize, usize)> = (0..funcs.len())
            .flat_map(|f| (0..n).flat_map(move |j| (0..2).map(move |c| (f, j, c))))
            .collect();
        let size = labels.len();
        let mut block = SymmetricMatrix::zeros(size);
        let mut x = vec![0.0; self.dim()];
        let mut y = vec![0.0; self.dim()];
        let mut leakage = 0.0f64;
        for (b, &(fb, jb, cb)) in labels.iter().enumerate() {
            for i in 0..n {
                x[self.index(i, jb, cb)] = funcs[fb][i];
            }
            self.apply(&x, &mut y);
            for i in 0..n {
                x[self.index(i, jb, cb)] = 0.0;
            }
            for (a, &(fa, ja, ca)) in labels.iter().enumerate() {
                let v: f64 = (0..n).map(|i| funcs[fa][i] * y[self.index(i, ja, ca)]).sum();
                block.set(a, b, v);
                for i in 0..n {
                    y[self.index(i, ja, ca)] -= v * funcs[fa][i];
                }
            }
            let rest: f64 = y.iter().map(|v| v * v).sum();
            leakage = leakage.max(rest.sqrt());
        }
        block.symmetrize();
        (block, leakage)
    }

    /// All `2 n^2` eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let per_sector: Vec<Result<Vec<f64>>> = self
            .sectors()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|freq| {
                let (block, _) = self.sector_block(freq);
                jacobi_eigen(block, false).map(|e| e.values)
            })
            .collect();
        let mut all = Vec::with_capacity(self.dim());
        for r in per_sector {
            all.extend(r?);
        }
        all.sort_by(f64::total_cmp);
        Ok(all)
    }

    /// Eigenvalues of `-(1/4)` times the zero-order matrix, with unit
    /// eigenvectors; ordered by absolute value so the first is the kernel
    /// direction of `ad_A ad_Abar` on `m`.
    pub fn zero_order_modes(&self) -> [(f64, [f64; 2]); 2] {
        let [[a, b], [_, d]] = self.zero_order;
        let m = SymmetricMatrix::from_row_major(2, vec![-0.25 * a, -0.25 * b, -0.25 * b, -0.25 * d])
            .expect("2x2 symmetric");
        let e = jacobi_eigen(m, true).expect("2x2 converges");
        let vecs = e.vectors.expect("requested");
        let mut modes = [
            (e.values[0], [vecs[0][0], vecs[0][1]]),
            (e.values[1], [vecs[1][0], vecs[1][1]]),
        ];
        modes.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()));
        modes
    }

    /// Rayleigh quotient of the constant field in the kernel direction; an
    /// exact discrete null vector, so this measures rounding only.
    pub fn constant_mode_eigenvalue(&self) -> f64 {
        let [(_, dir), _] = self.zero_order_modes();
        let mut x = vec![0.0; self.dim()];
        for i in 0..self.n {
            for j in 0..self.n {
                for c in 0..2 {
                    x[self.index(i, j, c)] = dir[c];
                }
            }
        }
        let mut y = vec![0.0; self.dim()];
        self.apply(&x, &mut y);
        let num: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        num / den
    }

    /// Continuum eigenvalue `pi^2 Q(kappa)` of `-(1/4) Laplacian` on the mode
    /// `exp(2 pi i (kappa_s s + kappa_t t))`.
    pub fn continuum_symbol(&self, ks: i64, kt: i64) -> f64 {
        let [g11, g12, g22] = self.metric;
        let (ks, kt) = (ks as f64, kt as f64);
        PI * PI * (g11 * ks * ks + 2.0 * g12 * ks * kt + g22 * kt * kt)
    }

    /// Exact eigenvalue of the discrete `-(1/4) Laplacian` on the same mode.
    pub fn discrete_symbol(&self, ks: i64, kt: i64) -> f64 {
        let [g11, g12, g22] = self.metric;
        let n2 = (self.n * self.n) as f64;
        let xs = 2.0 * PI * ks as f64 / self.n as f64;
        let xt = 2.0 * PI * kt as f64 / self.n as f64;
        0.25 * n2
            * (g11 * 2.0 * (1.0 - xs.cos())
                + g22 * 2.0 * (1.0 - xt.cos())
                + 2.0 * g12 * xs.sin() * xt.sin())
    }

    /// Upper bound on `|discrete_symbol - continuum_symbol|` from Taylor
    /// remainders of `cos` and `sin`.
    pub fn truncation_bound(&self, ks: i64, kt: i64) -> f64 {
        let [g11, g12, g22] = self.metric;
        let n2 = (self.n * self.n) as f64;
        let xs = (2.0 * PI * ks as f64 / self.n as f64).abs();
        let xt = (2.0 * PI * kt as f64 / self.n as f64).abs();
        // 0 <= x^2 - 2(1 - cos x) <= x^4/12
        // |xy - sin x sin y| <= |x||y|^3/6 + |y||x|^3/6 + |x|^3|y|^3/36
        let cross = xs * xt.powi(3) / 6.0 + xt * xs.powi(3) / 6.0 + xs.powi(3) * xt.powi(3) / 36.0;
        0.25 * n2 * (g11.abs() * xs.powi(4) / 12.0 + g22.abs() * xt.powi(4) / 12.0 + 2.0 * g12.abs() * cross)
    }

    /// Crude bound on the operator norm, used to scale rounding floors.
    fn norm_bound(&self) -> f64 {
        let [g11, g12, g22] = self.metric;
        let n2 = (self.n * self.n) as f64;
        let m = self.zero_order;
        0.25 * (4.0 * n2 * (g11.abs() + g22.abs() + g12.abs()))
            + 0.25 * (m[0][0].abs() + m[0][1].abs() + m[1][1].abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    pub grid: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub negative: usize,
    pub near_zero: usize,
    pub positive: usize,
    /// Half-width of the zero band.
    pub band: f64,
    pub constant_mode_eigenvalue: f64,
    /// Largest `|lambda|` classified as zero.
    pub largest_in_band: f64,
    /// Smallest `|lambda|` outside the band.
    pub smallest_outside_band: f64,
}

impl FdSpectrum {
    pub fn negative_eigenvalues(&self) -> &[f64] {
        &self.eigenvalues[..self.negative]
    }
}

/// Eigenvalues of the discretised Jacobi operator on an `n x n` grid with a
/// sign classification.
///
/// The zero band is `rounding + truncation`: the rounding floor comes from
/// the computed eigenvalue of the constant null field and the operator norm,
/// and the truncation part is the largest stencil error over all modes
/// inside the threshold ellipse of the grid metric, which covers every
/// continuum null mode. `GridTooCoarse` is returned when some mode whose
/// continuum eigenvalue is non-zero could be pushed into the band by the
/// stencil error.
pub fn fd_spectrum<S: Scalar>(vs: &VacuumSolution<S>, n: usize) -> Result<FdSpectrum> {
    let op = FdOperator::new(vs, n)?;
    let four_a2 = 4.0 * vs.alpha().norm_sqr();

    let constant = op.constant_mode_eigenvalue();
    let floor = (100.0 * constant.abs()).max(1e-10 * op.norm_bound());

    // Modes inside (or on) the continuum threshold ellipse.
    let level = four_a2 * (1.0 + 1e-6) + 1e-12;
    let wide = 2.0 * four_a2 + PI * PI * (op.metric[0] + op.metric[2]);
    let radius = box_radius(&op, wide);
    let mut truncation = 0.0f64;
    for ks in -radius..=radius {
        for kt in -radius..=radius {
            if op.continuum_symbol(ks, kt) <= level {
                truncation = truncation.max(op.truncation_bound(ks, kt));
            }
        }
    }
    let band = floor + truncation;

    let tiny = 1e-9 * (1.0 + four_a2);
    for ks in -radius..=radius {
        for kt in -radius..=radius {
            let mu = op.continuum_symbol(ks, kt);
            if mu > wide {
                continue;
            }
            let err = op.truncation_bound(ks, kt);
            for lambda in [mu, mu - four_a2] {
                if lambda.abs() > tiny && lambda.abs() <= band + err {
                    return Err(Error::GridTooCoarse(format!(
                        "mode ({ks},{kt}) with eigenvalue {lambda:.6} cannot be separated \
                         from zero at grid {n} (band {band:.3e}, stencil error {err:.3e})"
                    )));
                }
            }
        }
    }

    let eigenvalues = op.eigenvalues()?;
    let negative = eigenvalues.iter().filter(|&&v| v < -band).count();
    let near_zero = eigenvalues.iter().filter(|&&v| v.abs() <= band).count();
    let positive = eigenvalues.len() - negative - near_zero;
    let largest_in_band = eigenvalues
        .iter()
        .filter(|v| v.abs() <= band)
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let smallest_outside_band = eigenvalues
        .iter()
        .filter(|v| v.abs() > band)
        .fold(f64::INFINITY, |a, v| a.min(v.abs()));

    Ok(FdSpectrum {
        grid: n,
        eigenvalues,
        negative,
        near_zero,
        positive,
        band,
        constant_mode_eigenvalue: constant,
        largest_in_band,
        smallest_outside_band,
    })
}

/// Box half-width containing all `kappa` with `continuum_symbol <= level`.
fn box_radius(op: &FdOperator, level: f64) -> i64 {
    let [g11, g12, g22] = op.metric;
    // Q(k) >= lambda_min |k|^2 with lambda_min the smaller eigenvalue of g^ij.
    let mean = 0.5 * (g11 + g22);
    let lambda_min = mean - (0.25 * (g11 - g22).powi(2) + g12 * g12).sqrt();
    ((level / (PI * PI * lambda_min)).sqrt().ceil() as i64 + 1).max(1)
}

/// Which closed-form predictions agree with the finite-difference count.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjudication {
    pub fd: FdSpectrum,
    pub paper_index: usize,
    pub paper_nullity: usize,
    pub dual_index: usize,
    pub dual_nullity: usize,
    /// Variants whose index equals the FD negative count.
    pub matching: Vec<Variant>,
}

pub fn adjudicate<S: Scalar>(vs: &VacuumSolution<S>, n: usize) -> Result<Adjudication> {
    let fd = fd_spectrum(vs, n)?;
    let paper = index_nullity(vs, Variant::Paper)?;
    let dual = index_nullity(vs, Variant::Dual)?;
    let matching = [(Variant::Paper, paper.index), (Variant::Dual, dual.index)]
        .into_iter()
        .filter(|&(_, idx)| idx == fd.negative)
        .map(|(v, _)| v)
        .collect();
    Ok(Adjudication {
        fd,
        paper_index: paper.index,
        paper_nullity: paper.nullity,
        dual_index: dual.index,
        dual_nullity: dual.nullity,
        matching,
    })
}
