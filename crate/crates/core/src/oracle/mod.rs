//! Independent checks of the closed-form results.

pub mod eigen;
pub mod fd;
pub mod fourier;
pub mod quadrature;
pub mod residual;

pub use eigen::{jacobi_eigen, Eigen, SymmetricMatrix};
pub use fd::{adjudicate, fd_spectrum, Adjudication, FdOperator, FdSpectrum, MIN_GRID};
pub use fourier::{fourier_block_spectrum, required_box, FourierBlock, FourierSpectrum};
pub use quadrature::{energy_quadrature, EnergyQuadrature};
pub use residual::{
    harmonicity_residual, jacobi_residual, map_residuals, JacobiResidual, MapResiduals, NullMode,
};
