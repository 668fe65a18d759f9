use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite period component")]
    NonFinite,

    #[error("degenerate lattice: periods are linearly dependent over the reals")]
    DegenerateLattice,

    #[error("quadratic form is not positive definite (discriminant 4ac - b^2 = {0})")]
    NonPositiveDefinite(String),

    #[error("negative counting level {0}")]
    NegativeLevel(String),

    #[error("mode box K = {given} excludes modes with non-positive eigenvalue (need K >= {needed})")]
    BoxTooSmall { given: i64, needed: i64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("({k},{l}) is not a null mode: theta = {theta} but the threshold is {threshold}")]
    NotANullMode {
        k: i64,
        l: i64,
        theta: String,
        threshold: String,
    },

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
