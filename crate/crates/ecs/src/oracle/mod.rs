//! Independent floating point checks of the exact series.

pub mod elliptic;
pub mod galerkin;
pub mod jack;
pub mod residual;

pub use elliptic::{eval_potential, eval_theta, potential_constant, weierstrass_p, EllipticParams};
pub use galerkin::{galerkin_eigenvalue, galerkin_offset, lame_eigenvalues, GalerkinProblem};
pub use jack::{jack_vector, monomial_coefficients, sutherland_matrix, two_part_partitions};
pub use residual::{eval_series, residual_check, ResidualReport};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature too coarse: overlap changes by {relative_error:e} on halving the nodes")]
    QuadratureResolution { relative_error: f64 },
    #[error("grid too coarse: finite-difference error estimate {fd_error:e}")]
    GridTooCoarse { fd_error: f64 },
    #[error("linear algebra: {0}")]
    Linalg(String),
}
