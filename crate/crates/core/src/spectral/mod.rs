//! Dense complex linear algebra at small dimension (d ≤ 64).

mod eigen;
mod expm;
mod matrix;

pub use eigen::{
    dilation, dilation_spectrum, eig_general, eig_hermitian, eigenvalues, ln_exp_trace, singular_values,
    spectral_norm, tilted_mean, HermitianEigen, Spectrum,
};
pub use expm::{mat_exp, MAX_EXP_TOL};
pub use matrix::Matrix;

/// Default absolute tolerance for kernels in this module.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
/// Default relative tolerance for kernels in this module.
pub const DEFAULT_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tolerance {0} outside the supported range")]
    InvalidTolerance(f64),
    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("power iteration exhausted {iterations} iterations; last estimate {last}")]
    MaxIterExhausted { last: f64, iterations: usize },
}
