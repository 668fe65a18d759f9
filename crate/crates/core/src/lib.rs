//! Index and nullity of vacuum harmonic maps from flat tori to the sphere.
//!
//! A vacuum solution on the torus `C / (Z w1 + Z w2)` is
//! `phi(z) = exp(-2 z A - 2 conj(z) Abar)` for an off-diagonal `A` fixed by a
//! pair of winding numbers `(n, m)`. Its index and nullity are lattice-point
//! counts inside and on an ellipse, computed here exactly for rational
//! periods and checked against Fourier, finite-difference, quadrature and
//! residual oracles.

pub mod asymptotics;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod vacuum;

pub use error::{Error, Result};
pub use lattice::{ThetaForm, TorusLattice, Variant};
pub use scalar::{format_scalar, parse_rational, Rational, Scalar, Tolerance};
pub use spectrum::{
    count_lattice_points, enumerate_spectrum, index_nullity, threshold, CountMode,
    IndexNullityResult, PointCount, SpectrumEntry,
};
pub use vacuum::{Mat2, VacuumSolution};
