//! Energy of the map by direct quadrature.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vacuum::VacuumSolution;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyQuadrature {
    pub energy: f64,
    pub min_density: f64,
    pub max_density: f64,
}

/// `E = 1/2 int (|phi^-1 phi_x|^2 + |phi^-1 phi_y|^2) dx dy` with
/// `|X|^2 = -tr(X^2)/2`, by the trapezoidal rule on an `n x n` grid of the
/// fundamental parallelogram. Derivatives are exact (closed-form
/// differentiation of the matrix exponential).
pub fn energy_quadrature<S: Scalar>(vs: &VacuumSolution<S>, n: usize) -> Result<EnergyQuadrature> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("quadrature grid {n} < 4")));
    }
    let area = vs.lattice().area().to_f64();
    let mut sum = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..n {
            let z = vs.point(i as f64 / n as f64, j as f64 / n as f64);
            let phi_inv = vs.evaluate(z).adjoint();
            let (dx, dy) = vs.evaluate_gradient(z);
            let density = 0.5 * ((phi_inv * dx).su2_norm_sqr() + (phi_inv * dy).su2_norm_sqr());
            lo = lo.min(density);
            hi = hi.max(density);
            sum += density;
        }
    }
    Ok(EnergyQuadrature {
        energy: sum * area / (n * n) as f64,
        min_density: lo,
        max_density: hi,
    })
}
