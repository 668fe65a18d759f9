//! Vacuum harmonic maps from a flat torus to the round sphere.
//!
//! The sphere is realised inside SU(2) through the Cartan embedding of
//! `SU(2)/S(U(1) x U(1))`, with involution given by conjugation by
//! `Q = diag(1, -1)`. A vacuum solution is framed by
//! `F(z) = exp(z A + conj(z) Abar)` where `A = [[0, alpha], [beta, 0]]` lies
//! in the complexified tangent space `m^C`, `Abar = -A^*`, and
//! `|alpha| = |beta|` so that `A` and `Abar` commute. Its image in SU(2) is
//! `phi(z) = Q F Q F^{-1} = exp(-2 z A - 2 conj(z) Abar)`.
//!
//! The map descends to the torus with periods `w1, w2` exactly when
//! `sqrt(alpha beta) = pi i (conj(w2) n + conj(w1) m) / (conj(w2) w1 - w2 conj(w1))`
//! for integers `n, m`.

pub mod su2;

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};

use crate::lattice::TorusLattice;
use crate::scalar::Scalar;
pub use su2::Mat2;

#[derive(Debug, Clone)]
pub struct VacuumSolution<S> {
    lattice: TorusLattice<S>,
    n: i64,
    m: i64,
    sqrt_ab: Complex64,
    alpha: Complex64,
    beta: Complex64,
    alpha_abs_sq_over_pi2: S,
    energy_over_pi2: S,
}

impl<S: Scalar> VacuumSolution<S> {
    /// The vacuum solution with frequency integers `(n, m)`, in the gauge
    /// `alpha = beta = sqrt(alpha beta)`. `(0, 0)` gives the constant map.
    pub fn build(lattice: TorusLattice<S>, n: i64, m: i64) -> Self {
        let w = frequency_sum(&lattice, n, m);
        let cross = lattice.cross();
        let w_sq = w.norm_sqr();
        let two = S::from_int(2);
        let four = S::from_int(4);
        let energy_over_pi2 = two * w_sq.clone() / cross.abs();
        let alpha_abs_sq_over_pi2 = w_sq / (four * cross.clone() * cross.clone());

        // pi i w / (-2 i cross) = -pi w / (2 cross)
        let w64 = Complex64::new(w.re.to_f64(), w.im.to_f64());
        let sqrt_ab = w64 * (-PI / (2.0 * cross.to_f64()));

        Self {
            lattice,
            n,
            m,
            sqrt_ab,
            alpha: sqrt_ab,
            beta: sqrt_ab,
            alpha_abs_sq_over_pi2,
            energy_over_pi2,
        }
    }

    /// Same map data in the gauge `alpha = s e^{i phase}`, `beta = s e^{-i phase}`.
    /// The product `alpha beta` and `|alpha| = |beta|` are preserved.
    pub fn with_phase(&self, phase: f64) -> Self {
        let rot = Complex64::from_polar(1.0, phase);
        Self {
            alpha: self.sqrt_ab * rot,
            beta: self.sqrt_ab * rot.conj(),
            ..self.clone()
        }
    }

    pub fn lattice(&self) -> &TorusLattice<S> {
        &self.lattice
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn is_constant(&self) -> bool {
        self.n == 0 && self.m == 0
    }

    pub fn sqrt_ab(&self) -> Complex64 {
        self.sqrt_ab
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `alpha conj(alpha) / pi^2`, exact on the rational backend.
    pub fn alpha_abs_sq_over_pi2(&self) -> &S {
        &self.alpha_abs_sq_over_pi2
    }

    pub fn alpha_abs_sq(&self) -> f64 {
        PI * PI * self.alpha_abs_sq_over_pi2.to_f64()
    }

    /// Energy divided by `pi^2`; always rational for rational periods.
    pub fn energy_over_pi2(&self) -> &S {
        &self.energy_over_pi2
    }

    /// `E = 4 pi^2 |conj(w2) n + conj(w1) m|^2 / |conj(w2) w1 - w2 conj(w1)|`.
    pub fn energy(&self) -> f64 {
        PI * PI * self.energy_over_pi2.to_f64()
    }

    /// `(A, Abar)` with `Abar = -A^*`.
    pub fn a_matrix(&self) -> (Mat2, Mat2) {
        let a = Mat2::off_diagonal(self.alpha, self.beta);
        (a, -a.adjoint())
    }

    /// Off-diagonal entries of `z A + conj(z) Abar`.
    fn generator(&self, z: Complex64) -> (Complex64, Complex64) {
        let zb = z.conj();
        (
            z * self.alpha - zb * self.beta.conj(),
            z * self.beta - zb * self.alpha.conj(),
        )
    }

    /// The frame `F(z) = exp(z A + conj(z) Abar)`.
    pub fn frame(&self, z: Complex64) -> Mat2 {
        let (a, b) = self.generator(z);
        su2::exp_off_diagonal(a, b)
    }

    /// The map `phi(z) = exp(-2 z A - 2 conj(z) Abar)` into SU(2).
    pub fn evaluate(&self, z: Complex64) -> Mat2 {
        let (a, b) = self.generator(z);
        su2::exp_off_diagonal(a * -2.0, b * -2.0)
    }

    /// `(d phi/dx, d phi/dy)` at `z`, differentiating the closed-form exponential.
    pub fn evaluate_gradient(&self, z: Complex64) -> (Mat2, Mat2) {
        let (a, b) = self.generator(z);
        let (a, b) = (a * -2.0, b * -2.0);
        // d/dx: z -> 1, conj(z) -> 1;  d/dy: z -> i, conj(z) -> -i
        let dx = self.generator(Complex64::new(1.0, 0.0));
        let dy = self.generator(Complex64::new(0.0, 1.0));
        (
            su2::exp_off_diagonal_derivative(a, b, dx.0 * -2.0, dx.1 * -2.0),
            su2::exp_off_diagonal_derivative(a, b, dy.0 * -2.0, dy.1 * -2.0),
        )
    }

    /// Image of `phi(z)` on the unit sphere: the coordinates of the traceless
    /// Hermitian matrix `phi(z) Q` in the Pauli basis.
    pub fn sphere_point(&self, z: Complex64) -> [f64; 3] {
        let p = self.evaluate(z) * Mat2::Q;
        let Mat2(e) = p;
        // p = X s1 + Y s2 + Z s3 with s1 = [[0,1],[1,0]], s2 = [[0,-i],[i,0]], s3 = Q
        [
            0.5 * (e[0][1] + e[1][0]).re,
            0.5 * (e[1][0] - e[0][1]).im,
            0.5 * (e[0][0] - e[1][1]).re,
        ]
    }

    /// Point `s w1 + t w2` of the plane, as `f64`.
    pub fn point(&self, s: f64, t: f64) -> Complex64 {
        let w1 = self.lattice.omega1();
        let w2 = self.lattice.omega2();
        Complex64::new(w1.re.to_f64(), w1.im.to_f64()) * s
            + Complex64::new(w2.re.to_f64(), w2.im.to_f64()) * t
    }

    pub fn periods_f64(&self) -> (Complex64, Complex64) {
        (self.point(1.0, 0.0), self.point(0.0, 1.0))
    }
}

/// `conj(w2) n + conj(w1) m`.
pub fn frequency_sum<S: Scalar>(lattice: &TorusLattice<S>, n: i64, m: i64) -> Complex<S> {
    let (n, m) = (S::from_int(n), S::from_int(m));
    lattice.omega2().conj().scale(n) + lattice.omega1().conj().scale(m)
}

/// Integers `(n', m')` describing the same map after the basis change
/// `(p w1 + q w2, r w1 + s w2)`.
pub fn transform_frequencies([[p, q], [r, s]]: [[i64; 2]; 2], n: i64, m: i64) -> (i64, i64) {
    let det = p * s - q * r;
    ((p * n - q * m) * det, (s * m - r * n) * det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Tolerance};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rect(w: i64, h: i64) -> TorusLattice<Rational> {
        TorusLattice::new(
            Complex::new(q(w, 1), q(0, 1)),
            Complex::new(q(0, 1), q(h, 1)),
            Tolerance::DEFAULT,
        )
        .unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_unit_frequency() {
        let vs = VacuumSolution::build(rect(1, 1), 1, 0);
        assert!((vs.sqrt_ab() - c(0.0, PI / 2.0)).norm() < 1e-15);
        assert_eq!(vs.energy_over_pi2(), &q(2, 1));
        assert_eq!(vs.alpha_abs_sq_over_pi2(), &q(1, 4));
    }

    #[test]
    fn constant_map() {
        let vs = VacuumSolution::build(rect(3, 2), 0, 0);
        assert_eq!(vs.sqrt_ab(), c(0.0, 0.0));
        assert_eq!(vs.energy(), 0.0);
        for z in [c(0.0, 0.0), c(0.3, 1.7), c(-2.0, 5.0)] {
            assert_eq!(vs.evaluate(z), Mat2::IDENTITY);
        }
    }

    #[test]
    fn rectangle_energy_and_alpha() {
        let vs = VacuumSolution::build(rect(1, 2), 1, 0);
        assert_eq!(vs.energy_over_pi2(), &q(4, 1));
        assert_eq!(vs.alpha_abs_sq_over_pi2(), &q(1, 4));
        assert!((vs.alpha_abs_sq() - PI * PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn a_matrix_square() {
        let vs = VacuumSolution::build(rect(1, 1), 1, 0);
        let (a, abar) = vs.a_matrix();
        let want = Mat2::off_diagonal(c(0.0, PI / 2.0), c(0.0, PI / 2.0));
        assert!((a - want).norm() < 1e-15);
        assert!(a.commutator(abar).norm() < 1e-15);
        assert_eq!(a.trace(), c(0.0, 0.0));
        let (z, zbar) = VacuumSolution::build(rect(1, 1), 0, 0).a_matrix();
        assert_eq!((z, zbar), (Mat2::ZERO, Mat2::ZERO));
    }

    #[test]
    fn evaluate_at_origin_is_identity() {
        let vs = VacuumSolution::build(rect(2, 3), 2, -1);
        assert!((vs.evaluate(c(0.0, 0.0)) - Mat2::IDENTITY).norm() < 1e-15);
        assert!((vs.frame(c(0.0, 0.0)) - Mat2::IDENTITY).norm() < 1e-15);
    }

    #[test]
    fn square_map_closed_form() {
        // phi = exp(-4 x A), eigenphases -+ 2 pi x
        let vs = VacuumSolution::build(rect(1, 1), 1, 0);
        let z = c(0.5, 0.3);
        let phi = vs.evaluate(z);
        assert!((phi.trace() - c(2.0 * (PI).cos(), 0.0)).norm() < 1e-14);
        assert!((vs.evaluate(z + c(1.0, 0.0)) - phi).norm() < 1e-12);
        assert!((vs.evaluate(z + c(0.0, 1.0)) - phi).norm() < 1e-12);
    }

    #[test]
    fn monodromy_is_central() {
        let vs = VacuumSolution::build(rect(1, 1), 1, 0);
        let f = vs.frame(c(1.0, 0.0));
        assert!((f + Mat2::IDENTITY).norm() < 1e-14 || (f - Mat2::IDENTITY).norm() < 1e-14);
    }

    #[test]
    fn map_is_cartan_image_of_frame() {
        let vs = VacuumSolution::build(rect(1, 2), 3, -2);
        let z = c(0.37, -0.81);
        let f = vs.frame(z);
        let sigma_f = Mat2::Q * f * Mat2::Q;
        assert!((sigma_f * f.adjoint() - vs.evaluate(z)).norm() < 1e-13);
    }

    #[test]
    fn sphere_point_is_unit() {
        let vs = VacuumSolution::build(rect(1, 1), 2, 1);
        for z in [c(0.1, 0.2), c(0.9, 0.4), c(0.0, 0.0)] {
            let [x, y, zz] = vs.sphere_point(z);
            assert!((x * x + y * y + zz * zz - 1.0).abs() < 1e-13);
        }
        // phi(0) = I, so the base point is Q itself: the north pole.
        assert_eq!(vs.sphere_point(c(0.0, 0.0)), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn gauge_phase_keeps_product_and_moduli() {
        let vs = VacuumSolution::build(rect(1, 1), 2, 1);
        let g = vs.with_phase(0.7);
        assert!((g.alpha() * g.beta() - vs.sqrt_ab() * vs.sqrt_ab()).norm() < 1e-12);
        assert!((g.alpha().norm() - g.beta().norm()).abs() < 1e-14);
        let (a, abar) = g.a_matrix();
        assert!(a.commutator(abar).norm() < 1e-12);
    }

    #[test]
    fn basis_change_frequencies() {
        let lat = rect(1, 2);
        for mat in [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[1, 0], [-3, -1]]] {
            let other = lat.change_basis(mat).unwrap();
            let (n2, m2) = transform_frequencies(mat, 3, -2);
            assert_eq!(
                frequency_sum(&other, n2, m2).norm_sqr(),
                frequency_sum(&lat, 3, -2).norm_sqr(),
                "{mat:?}"
            );
        }
    }
}
