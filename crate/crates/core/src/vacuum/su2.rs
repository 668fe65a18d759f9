//! 2x2 complex matrices and the closed-form exponential of off-diagonal ones.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Below this `|ab|` the exponential of `[[0,a],[b,0]]` switches to its series.
const SERIES_CUTOFF: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[Complex64::new(0.0, 0.0); 2]; 2]);
    pub const IDENTITY: Mat2 = Mat2([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    /// `diag(1, -1)`; conjugation by it is the involution fixing the diagonal subgroup.
    pub const Q: Mat2 = Mat2([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
    ]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn off_diagonal(upper: Complex64, lower: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Mat2([[z, upper], [lower, z]])
    }

    /// Element of the tangent space `m`: `[[0, z], [-conj(z), 0]]`.
    pub fn from_m(z: Complex64) -> Self {
        Self::off_diagonal(z, -z.conj())
    }

    pub fn scale(self, s: Complex64) -> Self {
        let Mat2(m) = self;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn adjoint(self) -> Self {
        let Mat2(m) = self;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn commutator(self, other: Mat2) -> Mat2 {
        self * other - other * self
    }

    /// Frobenius norm.
    pub fn norm(self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `|X|^2 = -tr(X^2) / 2`, the invariant metric on su(2), as a real number.
    pub fn su2_norm_sqr(self) -> f64 {
        -0.5 * (self * self).trace().re
    }

    /// Distance from being special unitary: `max(|M M* - I|, |det M - 1|)`.
    pub fn su2_defect(self) -> f64 {
        let unitary = (self * self.adjoint() - Mat2::IDENTITY).norm();
        let det = (self.det() - Complex64::new(1.0, 0.0)).norm();
        unitary.max(det)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

/// `cosh(sqrt(q))` and `sinh(sqrt(q)) / sqrt(q)` as entire functions of `q`.
fn cosh_sinhc(q: Complex64) -> (Complex64, Complex64) {
    if q.norm() < SERIES_CUTOFF {
        return (Complex64::new(1.0, 0.0) + q * 0.5, Complex64::new(1.0, 0.0) + q / 6.0);
    }
    let w = q.sqrt();
    (w.cosh(), w.sinh() / w)
}

/// Derivative of `sinh(sqrt(q)) / sqrt(q)` with respect to `q`.
fn sinhc_prime(q: Complex64) -> Complex64 {
    if q.norm() < 1e-2 {
        // sum_j j q^(j-1) / (2j+1)!
        let mut term_fact = 6.0; // (2j+1)! at j = 1
        let mut qp = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..12u32 {
            acc += qp * (j as f64 / term_fact);
            qp *= q;
            term_fact *= ((2 * j + 2) * (2 * j + 3)) as f64;
        }
        return acc;
    }
    let (c, s) = cosh_sinhc(q);
    (c - s) / (q * 2.0)
}

/// `exp([[0, a], [b, 0]]) = cosh(w) I + sinh(w)/w M` with `w^2 = ab`.
pub fn exp_off_diagonal(a: Complex64, b: Complex64) -> Mat2 {
    let (c, s) = cosh_sinhc(a * b);
    let m = Mat2::off_diagonal(a, b);
    Mat2::IDENTITY.scale(c) + m.scale(s)
}

/// Directional derivative of `exp([[0, a], [b, 0]])` when `(a, b)` moves with
/// velocity `(da, db)`.
pub fn exp_off_diagonal_derivative(a: Complex64, b: Complex64, da: Complex64, db: Complex64) -> Mat2 {
    let q = a * b;
    let dq = da * b + a * db;
    let (_, s) = cosh_sinhc(q);
    let ds = sinhc_prime(q);
    // d cosh(sqrt q) / dq = sinhc(q) / 2
    Mat2::IDENTITY.scale(s * 0.5 * dq)
        + Mat2::off_diagonal(a, b).scale(ds * dq)
        + Mat2::off_diagonal(da, db).scale(s)
}
