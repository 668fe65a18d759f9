//! Growth of the index along rays of vacuum solutions.
//!
//! The index is the number of lattice points inside an ellipse whose level
//! grows linearly with the energy, so `index / E` tends to
//! `2 / (pi sqrt(D) |conj(w2) w1 - w2 conj(w1)|)` by the leading term
//! `2 pi x / sqrt(D)` of the counting function.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{ThetaForm, TorusLattice, Variant};
use crate::scalar::{Scalar, Tolerance};
use crate::spectrum::{count_lattice_points, index_nullity, CountMode};
use crate::vacuum::VacuumSolution;

/// `A(x) = #{(k, l) : Q(k, l) < x}`.
pub fn counting_function<S: Scalar>(form: &ThetaForm<S>, x: &S, tol: Tolerance) -> Result<usize> {
    Ok(count_lattice_points(form, x, CountMode::Strict, tol)?.count)
}

/// Leading term `2 pi x / sqrt(D)` of the counting function.
pub fn counting_leading_term<S: Scalar>(form: &ThetaForm<S>, x: f64) -> f64 {
    2.0 * PI * x / form.discriminant().to_f64().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSample<S> {
    pub t: i64,
    pub n: i64,
    pub m: i64,
    pub energy: f64,
    pub energy_over_pi2: S,
    pub index: usize,
    /// `index / energy`
    pub ratio: f64,
    /// Limit of the ratio implied by the counting asymptotics of `variant`.
    pub limit: f64,
    /// `1 / (2 pi sin^2 angle(w1, w2))`.
    pub corollary_limit: f64,
}

/// Limit of `index / E` for `variant`: `2 / (pi sqrt(D) gap)`.
pub fn ratio_limit<S: Scalar>(lat: &TorusLattice<S>, variant: Variant) -> f64 {
    let d = lat.theta_form(variant).discriminant().to_f64();
    2.0 / (PI * d.sqrt() * lat.period_gap().to_f64())
}

/// `1 / (2 pi sin^2 angle(w1, w2))`.
pub fn corollary_limit<S: Scalar>(lat: &TorusLattice<S>) -> f64 {
    let sin = lat.angle().sin();
    1.0 / (2.0 * PI * sin * sin)
}

/// Samples `(n, m) = t (n0, m0)` for `t = 1..=steps`.
pub fn ratio_table<S: Scalar>(
    lat: &TorusLattice<S>,
    ray: (i64, i64),
    steps: usize,
    variant: Variant,
) -> Result<Vec<RatioSample<S>>> {
    if ray == (0, 0) {
        return Err(Error::InvalidArgument("ray (0,0) has zero energy".into()));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let limit = ratio_limit(lat, variant);
    let corollary = corollary_limit(lat);
    (1..=steps as i64)
        .into_par_iter()
        .map(|t| {
            let (n, m) = (t * ray.0, t * ray.1);
            let vs = VacuumSolution::build(lat.clone(), n, m);
            let index = index_nullity(&vs, variant)?.index;
            let energy = vs.energy();
            Ok(RatioSample {
                t,
                n,
                m,
                energy,
                energy_over_pi2: vs.energy_over_pi2().clone(),
                index,
                ratio: index as f64 / energy,
                limit,
                corollary_limit: corollary,
            })
        })
        .collect()
}
